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
#include <vector>

#include "uqeq/hilbert.hpp"

/// Single-qubit closed forms in the Bloch representation.
namespace uqeq::qubit {

using hilbert::DensityState;
using hilbert::Observable;
using hilbert::PureState;
using Vec3 = std::array<double, 3>;

double dot(const Vec3 &a, const Vec3 &b);
Vec3 cross(const Vec3 &a, const Vec3 &b);
double length(const Vec3 &a);

/// a . sigma
Observable pauli_observable(const Vec3 &axis);

/// A = alpha1 I + alpha2 a . sigma with |a| = 1.
struct BlochObservable {
    double alpha1;
    double alpha2;
    Vec3 axis;

    BlochObservable(double alpha1, double alpha2, const Vec3 &axis);
    [[nodiscard]] Observable observable() const;
};

/// rho = (I + r . sigma) / 2 with |r| <= 1.
class BlochState {
  public:
    explicit BlochState(const Vec3 &r);
    /// Bloch vector of cos(theta/2)|0> + exp(i varphi) sin(theta/2)|1>.
    static BlochState from_angles(double theta, double varphi);

    [[nodiscard]] const Vec3 &r() const noexcept { return r_; }
    [[nodiscard]] bool is_pure() const;
    [[nodiscard]] DensityState density() const;

  private:
    Vec3 r_;
};

PureState pure_from_angles(double theta, double varphi);

/// A = cos(phi) sx + sin(phi) sy, B = sin(phi) sx + cos(phi) sy.
struct PlanarPair {
    double phi;
    [[nodiscard]] Observable a() const;
    [[nodiscard]] Observable b() const;
};

enum class Flag { Finite, PosInfinity, Indeterminate };

struct FlaggedValue {
    double value;
    Flag flag;

    [[nodiscard]] bool finite() const noexcept { return flag == Flag::Finite; }
    /// The IEEE encoding: value, +inf or nan.
    [[nodiscard]] double as_double() const;
};

/// var(A) var(B) / |<[A,B]>/2|^2 for the planar pair on the pure state at
/// (theta, varphi).
FlaggedValue u1_closed(double theta, double varphi, double phi);

/// (var(A) + var(B)) / (var(A+B)/2) for the same setting. Throws
/// DegeneratePair when 1 + sin(2 phi) vanishes.
FlaggedValue u2_closed(double theta, double varphi, double phi);

/// 2 - (a.r)^2 - (b.r)^2
double sum_variances_bloch(const Vec3 &a, const Vec3 &b, const BlochState &s);

struct StateIndependentBound {
    /// 1 - |a.b|
    double bound;
    /// Largest eigenvector overlap, sqrt((1 + |a.b|)/2).
    double overlapC;
};

StateIndependentBound state_independent_bound(const Vec3 &a, const Vec3 &b);

struct UpsilonIdentity {
    /// var(A) var(B) - <C>^2/4 - <F>^2/4 from the density matrix.
    double lhs;
    /// (1 - (a.b)^2)(1 - |r|^2)
    double rhs;
};

UpsilonIdentity upsilon_identity(const Vec3 &a, const Vec3 &b,
                                 const BlochState &s);

struct GridPoint {
    double theta;
    double varphi;
    FlaggedValue u1;
    FlaggedValue u2;
};

struct Grid {
    double phi;
    std::size_t nTheta;
    std::size_t nVarphi;
    /// Row-major, theta outer.
    std::vector<GridPoint> points;

    [[nodiscard]] const GridPoint &at(std::size_t i, std::size_t j) const {
        return points[i * nVarphi + j];
    }
};

/// theta in [0, pi], varphi in [0, 2 pi], endpoints included.
Grid grid_scan(double phi, std::size_t nTheta, std::size_t nVarphi);

/// Header `theta,varphi,u1,u2`, one row per grid point.
void write_grid_csv(const Grid &grid, std::ostream &out);

} // namespace uqeq::qubit
