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

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "uqeq/hilbert.hpp"

/// Collective spin of N spin-1/2 particles in the symmetric (Dicke)
/// subspace, coherent and one-axis-twisted states, and squeezing figures.
namespace uqeq::spin {

using hilbert::Observable;
using hilbert::PureState;
using Vec3 = std::array<double, 3>;

inline constexpr int kMaxParticles = 63;

/// Jx, Jy, Jz on the basis |j, m>, m = j, j-1, ..., -j.
class SpinSystem {
  public:
    explicit SpinSystem(int nParticles);

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] double j() const noexcept { return 0.5 * n_; }
    [[nodiscard]] std::size_t dim() const noexcept {
        return static_cast<std::size_t>(n_) + 1;
    }
    [[nodiscard]] const Observable &jx() const noexcept { return jx_; }
    [[nodiscard]] const Observable &jy() const noexcept { return jy_; }
    [[nodiscard]] const Observable &jz() const noexcept { return jz_; }
    /// m value of basis index k.
    [[nodiscard]] double m(std::size_t k) const noexcept {
        return j() - static_cast<double>(k);
    }
    /// n . J
    [[nodiscard]] Observable along(const Vec3 &n) const;

  private:
    int n_;
    Observable jx_;
    Observable jy_;
    Observable jz_;
};

SpinSystem build_spin(int nParticles);

/// exp(-i angle n.J)|psi>, n a unit vector.
PureState rotate(const SpinSystem &sys, const PureState &psi, const Vec3 &n,
                 double angle);

/// |j, j> rotated by theta about (-sin varphi, cos varphi, 0).
PureState coherent_spin_state(const SpinSystem &sys, double theta,
                              double varphi);

/// exp(-i mu Jz^2) applied to the coherent state at (theta0, varphi0).
PureState one_axis_twist(const SpinSystem &sys, double theta0, double varphi0,
                         double mu);

struct Frame {
    Vec3 n1;
    Vec3 n2;
    Vec3 n3;
};

/// n2 along the mean spin, n1 the direction of least variance orthogonal to
/// it, n3 = n1 x n2.
Frame optimal_frame(const SpinSystem &sys, const PureState &psi);

struct SqueezingReport {
    double xiH2;
    double xiR2;
    double chi2;
    double qfi;
    double theta1;
    double generalizedBound;
    double meanJn2;
    double varJn1;
    double varJn3;
};

/// Squeezing figures in the frame (n1, n2, n3). theta1 is taken for
/// A = J_n1, B = J_n3 on the branch where the commutator term is positive,
/// with the tight orthogonal state, or with `orth` when given.
SqueezingReport squeezing_report(const SpinSystem &sys, const PureState &psi,
                                 const Frame &frame,
                                 const std::optional<PureState> &orth = {});

/// var < |<C>|/2
bool squeezed_rur(double variance, double expC);
/// var < |<C>|/(2 - theta1)
bool squeezed_theta1(double variance, double expC, double theta1);
/// var < (|<C>| + theta2)/2
bool squeezed_theta2(double variance, double expC, double theta2);

struct SweepRow {
    double mu;
    SqueezingReport report;
};

/// One-axis twisting of the coherent state at (theta0, varphi0) for `count`
/// values of mu evenly spaced over [muLo, muHi], each in its optimal frame.
std::vector<SweepRow> oat_sweep(const SpinSystem &sys, double theta0,
                                double varphi0, double muLo, double muHi,
                                std::size_t count);

/// Header `mu,xiH2,xiR2,chi2,generalized_bound`.
void write_sweep_csv(const std::vector<SweepRow> &rows, std::ostream &out);

} // namespace uqeq::spin
