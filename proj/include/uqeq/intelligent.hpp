// Copyright 2026 The uqeq Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "uqeq/hilbert.hpp"
#include "uqeq/relations.hpp"

/// States saturating the product relations. A generalized intelligent state
/// (GIS) solves (A + i*gamma*B)|psi> = lambda|psi> for complex gamma and
/// saturates the Schroedinger relation; real gamma gives the ordinary ones
/// (OIS) that saturate the Robertson relation.
namespace uqeq::intelligent {

using hilbert::cplx;
using hilbert::Observable;
using hilbert::PureState;

inline constexpr double kResidualCutoff = 1e-8;

struct GisParameter {
    /// (<C> + i<F>) / (2 var(B))
    cplx gamma;
    /// <A> + i*gamma*<B>
    cplx lambdaEig;
    /// | |gamma|^2 - var(A)/var(B) |; near zero only for intelligent states.
    double magnitudeCheck;
};

GisParameter gis_parameter(const Observable &a, const Observable &b,
                           const PureState &psi);

struct StateClassification {
    /// ||(A - <A> + i*gamma*(B - <B>))|psi>||, gamma from gis_parameter.
    /// Empty when psi is an eigenstate of B.
    std::optional<double> gisResidual;
    std::optional<cplx> gamma;
    bool isGIS = false;
    bool isOIS = false;
    /// ||(dA^-2 (A-<A>)^2 + dB^-2 (B-<B>)^2 - 2)|psi>||, stationarity of the
    /// product of variances. Empty when either deviation vanishes.
    std::optional<double> criticalProductResidual;
    /// ||((A-<A>)^2 + (B-<B>)^2 - var(A) - var(B))|psi>||, stationarity of
    /// the sum of variances.
    double criticalSumResidual = 0.0;
};

StateClassification classify_state(const Observable &a, const Observable &b,
                                   const PureState &psi);

struct IntelligentState {
    PureState state;
    cplx eigenvalue;
    double eigenResidual;
    StateClassification classification;
    double deviationA;
    double deviationB;
    /// False when a deviation is below 1e-10 and the ratio is meaningless.
    bool ratioChecked;
    /// | dA/dB - |gamma| |
    std::optional<double> ratioMismatch;
    [[nodiscard]] bool ratio_consistent() const {
        return !ratioChecked || *ratioMismatch <= 1e-6;
    }
};

/// Eigenvectors of A + i*gamma*B. Dependent vectors of a defective matrix
/// are dropped, so fewer than d states may come back.
std::vector<IntelligentState> solve_intelligent_states(const Observable &a,
                                                       const Observable &b,
                                                       cplx gamma);

inline std::vector<IntelligentState>
solve_intelligent_states(const Observable &a, const Observable &b,
                         double gamma) {
    return solve_intelligent_states(a, b, cplx{gamma, 0.0});
}

struct SumMinimum {
    PureState state;
    double sumW;
    double criticalSumResidual;
    int iterations;
};

/// Minimizes var(A) + var(B) over pure states. Uses
/// var(A) + var(B) = min over (a, b) of <(A-a)^2 + (B-b)^2>: the state is the
/// ground state of (A-a)^2 + (B-b)^2 and (a, b) is driven to its own means
/// by fixed-point iteration refined with Newton steps. Several seeded
/// starting points; the lowest value wins.
SumMinimum minimize_sum_variance(const Observable &a, const Observable &b,
                                 std::uint64_t seed, int starts = 8);

} // namespace uqeq::intelligent
