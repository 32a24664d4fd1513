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

#include <optional>
#include <utility>
#include <span>
#include <string>
#include <vector>

#include "uqeq/hilbert.hpp"

/// Variance functionals of an observable pair on a state, the bounds built
/// from them, and the exact sum/product equalities those bounds come from.
///
/// Conventions: C = -i[A, B] and F = {A - <A>, B - <B>}, so that
/// i<[A, B]> = -<C>. A `Sign` selects the branch of A +- iB.
namespace uqeq::relations {

using hilbert::ComplexMatrix;
using hilbert::CVector;
using hilbert::DensityState;
using hilbert::Observable;
using hilbert::PureState;

enum class Sign : int { Plus = 1, Minus = -1 };

[[nodiscard]] constexpr double to_double(Sign s) noexcept {
    return s == Sign::Plus ? 1.0 : -1.0;
}
[[nodiscard]] constexpr Sign flip(Sign s) noexcept {
    return s == Sign::Plus ? Sign::Minus : Sign::Plus;
}

inline constexpr double kImagTol = 1e-10;
inline constexpr double kOrthoTol = 1e-10;

struct MomentReport {
    double mean = 0.0;
    double variance = 0.0;
};

struct PairMoments {
    double meanA = 0.0;
    double meanB = 0.0;
    double varA = 0.0;
    double varB = 0.0;
    double expC = 0.0;
    double expF = 0.0;
};

MomentReport moments(const Observable &o, const PureState &psi);
MomentReport moments(const Observable &o, const DensityState &rho);

PairMoments pair_moments(const Observable &a, const Observable &b,
                         const PureState &psi);
PairMoments pair_moments(const Observable &a, const Observable &b,
                         const DensityState &rho);

/// <psi|M|psi> for an analytically real quantity; throws ImaginaryResidue
/// when the imaginary part exceeds kImagTol.
double real_expectation(const ComplexMatrix &m, const PureState &psi,
                        const char *what);

/// O|psi> = mean |psi> + deviation |orth>. The phase of `orth` is the one
/// fixed by this identity.
struct VaidmanDecomposition {
    double mean;
    double deviation;
    PureState orth;
};

VaidmanDecomposition vaidman_decompose(const Observable &o,
                                       const PureState &psi);

/// sign * i<[A,B]> + |<psi|A + sign*iB|orth>|^2
double maccone_pati_l1(const Observable &a, const Observable &b,
                       const PureState &psi, const PureState &orth, Sign sign);
/// Var(A+B)/2
double maccone_pati_l2(const Observable &a, const Observable &b,
                       const PureState &psi);
/// Var(A-B)/2
double maccone_pati_l3(const Observable &a, const Observable &b,
                       const PureState &psi);

struct AmendedRur {
    double bound;
    double theta1;
    /// 1 - theta1/2. The bound is a lower bound on dA*dB only while this is
    /// positive; for a negative denominator the inequality reverses.
    double denominator;
    [[nodiscard]] bool is_lower_bound() const noexcept {
        return denominator > 0.0;
    }
};

/// sign*(i/2)<[A,B]> / (1 - |<psi|A/dA + sign*iB/dB|orth>|^2 / 2)
AmendedRur amended_rur(const Observable &a, const Observable &b,
                       const PureState &psi, const PureState &orth, Sign sign);

struct EqualityCheck {
    double lhs;
    double rhs;
    double residual;
};

/// Sum of variances against sign*i<[A,B]> + sum_k |<psi|A+sign*iB|k>|^2.
EqualityCheck theorem1_equality(const Observable &a, const Observable &b,
                                const PureState &psi,
                                std::span<const PureState> basis, Sign sign);

/// dA*dB against sign*(i/2)<[A,B]> / (1 - sum_k |<psi|A/dA+sign*iB/dB|k>|^2/2).
EqualityCheck theorem2_equality(const Observable &a, const Observable &b,
                                const PureState &psi,
                                std::span<const PureState> basis, Sign sign);

/// Prefix sums of the sum-of-variances equality: element m keeps the first
/// m+1 complement terms. Nondecreasing, last element equals the sum of
/// variances.
std::vector<double> hierarchy_bounds(const Observable &a, const Observable &b,
                                     const PureState &psi,
                                     std::span<const PureState> basis,
                                     Sign sign);

/// The orthogonal state that makes maccone_pati_l1 tight:
/// (A - sign*iB - <A - sign*iB>)|psi>, normalized.
PureState optimal_orthogonal_state(const Observable &a, const Observable &b,
                                   const PureState &psi, Sign sign);

/// Same construction for the normalized operators A/dA, B/dB; makes
/// amended_rur an equality.
PureState theta1_optimal_state(const Observable &a, const Observable &b,
                               const PureState &psi, Sign sign);

/// sqrt(<C>^2 + <F>^2)-type strengthening of the sum bound. omega is
/// atan2(<F>, <C>); the operator is A + sign*i*exp(-i*omega)*B, whose
/// branch bound is -sign*sqrt(<C>^2+<F>^2) + theta3. The larger branch is
/// returned.
struct Theta3Bound {
    double bound;
    double omega;
    double theta3;
    Sign sign;
};

Theta3Bound theta3_bound(const Observable &a, const Observable &b,
                         const PureState &psi, const PureState &orth);

/// Orthogonal state maximizing theta3 on the +sqrt branch.
PureState theta3_optimal_state(const Observable &a, const Observable &b,
                               const PureState &psi);

/// A value or the reason it is not defined.
struct Quantity {
    std::optional<double> value;
    std::string status = "ok";

    static Quantity of(double v) { return Quantity{v, "ok"}; }
    static Quantity missing(std::string why) {
        return Quantity{std::nullopt, std::move(why)};
    }
    [[nodiscard]] bool ok() const noexcept { return value.has_value(); }
};

struct UncertaintyReport {
    PairMoments pair;
    double sumW = 0.0;
    double prodU = 0.0;
    /// <C>^2/4, the squared Robertson bound.
    double rur = 0.0;
    double surBound = 0.0;
    double upsilon = 0.0;
    Quantity l1Plus;
    Quantity l1Minus;
    double l2 = 0.0;
    double l3 = 0.0;
    double l2Prime = 0.0;
    Quantity amendedRURPlus;
    Quantity amendedRURMinus;
    Quantity theta1;
    Quantity theta2;
    Quantity theta3;
    Quantity theta3Bound;
    Quantity vaidmanDeviationA;
    Quantity vaidmanDeviationB;
};

/// Everything above for one (A, B, psi). L1 and the amended RUR use the
/// orthogonal states that make them tight. theta1 and theta2 are taken on
/// the branch where sign*i<[A,B]> = |<C>|, with their tight orthogonal
/// states, so they vanish exactly on intelligent states.
UncertaintyReport uncertainty_report(const Observable &a, const Observable &b,
                                     const PureState &psi);

} // namespace uqeq::relations
