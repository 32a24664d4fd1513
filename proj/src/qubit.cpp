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

#include "uqeq/qubit.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "uqeq/error.hpp"
#include "uqeq/format.hpp"
#include "uqeq/relations.hpp"

namespace uqeq::qubit {

using hilbert::ComplexMatrix;
using hilbert::cplx;

namespace {

constexpr double kUnitTol = 1e-12;
constexpr double kPureTol = 1e-10;
constexpr double kVanish = 1e-14;
constexpr double kPi = 3.14159265358979323846;

void require_unit(const Vec3 &v, const char *what) {
    if (std::abs(length(v) - 1.0) > kUnitTol) {
        throw Error(ErrorKind::InvalidArgument,
                    std::string(what) + " must be a unit vector");
    }
}

FlaggedValue ratio(double num, double den) {
    if (den < kVanish) {
        if (num > kVanish) {
            return {std::numeric_limits<double>::infinity(), Flag::PosInfinity};
        }
        return {std::numeric_limits<double>::quiet_NaN(), Flag::Indeterminate};
    }
    return {num / den, Flag::Finite};
}

double sq(double x) { return x * x; }

void require_pair(double phi) {
    if (1.0 + std::sin(2.0 * phi) <= kVanish) {
        throw Error(ErrorKind::DegeneratePair);
    }
}

} // namespace

double dot(const Vec3 &a, const Vec3 &b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Vec3 cross(const Vec3 &a, const Vec3 &b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

double length(const Vec3 &a) { return std::sqrt(dot(a, a)); }

Observable pauli_observable(const Vec3 &axis) {
    ComplexMatrix m(2);
    m(0, 0) = axis[2];
    m(1, 1) = -axis[2];
    m(0, 1) = cplx{axis[0], -axis[1]};
    m(1, 0) = cplx{axis[0], axis[1]};
    return Observable(m);
}

BlochObservable::BlochObservable(double a1, double a2, const Vec3 &a)
    : alpha1(a1), alpha2(a2), axis(a) {
    require_unit(axis, "axis");
}

Observable BlochObservable::observable() const {
    ComplexMatrix m = cplx{alpha2, 0.0} * pauli_observable(axis).matrix();
    m += cplx{alpha1, 0.0} * ComplexMatrix::identity(2);
    return Observable(m);
}

BlochState::BlochState(const Vec3 &r) : r_(r) {
    if (length(r) > 1.0 + kUnitTol) {
        throw Error(ErrorKind::InvalidArgument, "Bloch vector longer than 1");
    }
}

BlochState BlochState::from_angles(double theta, double varphi) {
    return BlochState({std::sin(theta) * std::cos(varphi),
                       std::sin(theta) * std::sin(varphi), std::cos(theta)});
}

bool BlochState::is_pure() const {
    return std::abs(length(r_) - 1.0) <= kPureTol;
}

DensityState BlochState::density() const {
    ComplexMatrix rho = cplx{0.5, 0.0} * pauli_observable(r_).matrix();
    rho += cplx{0.5, 0.0} * ComplexMatrix::identity(2);
    return DensityState(rho);
}

PureState pure_from_angles(double theta, double varphi) {
    return PureState::normalized(
        {cplx{std::cos(theta / 2.0), 0.0},
         std::polar(std::sin(theta / 2.0), varphi)});
}

Observable PlanarPair::a() const {
    return pauli_observable({std::cos(phi), std::sin(phi), 0.0});
}

Observable PlanarPair::b() const {
    return pauli_observable({std::sin(phi), std::cos(phi), 0.0});
}

double FlaggedValue::as_double() const {
    switch (flag) {
    case Flag::Finite:
        return value;
    case Flag::PosInfinity:
        return std::numeric_limits<double>::infinity();
    case Flag::Indeterminate:
        break;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

// The factors are written as cos^2 + sin^2 * (...) so that nothing cancels
// near the divergence lines.
FlaggedValue u1_closed(double theta, double varphi, double phi) {
    const double c2 = sq(std::cos(theta));
    const double s2 = sq(std::sin(theta));
    const double num = (c2 + s2 * sq(std::sin(varphi - phi))) *
                       (c2 + s2 * sq(std::cos(varphi + phi)));
    const double den = c2 * sq(std::cos(2.0 * phi));
    return ratio(num, den);
}

FlaggedValue u2_closed(double theta, double varphi, double phi) {
    require_pair(phi);
    const double c2 = sq(std::cos(theta));
    const double s2 = sq(std::sin(theta));
    const double num =
        2.0 * c2 + s2 * (1.0 - std::sin(2.0 * varphi) * std::sin(2.0 * phi));
    const double pre = sq(std::cos(phi) + std::sin(phi));
    const double den =
        pre * (c2 + 0.5 * s2 * sq(std::cos(varphi) - std::sin(varphi)));
    return ratio(num, den);
}

double sum_variances_bloch(const Vec3 &a, const Vec3 &b, const BlochState &s) {
    return 2.0 - sq(dot(a, s.r())) - sq(dot(b, s.r()));
}

StateIndependentBound state_independent_bound(const Vec3 &a, const Vec3 &b) {
    const double ab = std::abs(dot(a, b));
    return {1.0 - ab, std::sqrt((1.0 + ab) / 2.0)};
}

UpsilonIdentity upsilon_identity(const Vec3 &a, const Vec3 &b,
                                 const BlochState &s) {
    require_unit(a, "a");
    require_unit(b, "b");
    const auto pm = relations::pair_moments(pauli_observable(a),
                                            pauli_observable(b), s.density());
    const double lhs =
        pm.varA * pm.varB - 0.25 * sq(pm.expC) - 0.25 * sq(pm.expF);
    const double rhs = (1.0 - sq(dot(a, b))) * (1.0 - dot(s.r(), s.r()));
    return {lhs, rhs};
}

Grid grid_scan(double phi, std::size_t nTheta, std::size_t nVarphi) {
    if (nTheta < 2 || nVarphi < 2) {
        throw Error(ErrorKind::InvalidArgument,
                    "grid needs at least 2 points per axis");
    }
    require_pair(phi);
    Grid grid{phi, nTheta, nVarphi, {}};
    grid.points.reserve(nTheta * nVarphi);
    for (std::size_t i = 0; i < nTheta; ++i) {
        const double theta =
            kPi * static_cast<double>(i) / static_cast<double>(nTheta - 1);
        for (std::size_t j = 0; j < nVarphi; ++j) {
            const double varphi = 2.0 * kPi * static_cast<double>(j) /
                                  static_cast<double>(nVarphi - 1);
            grid.points.push_back({theta, varphi, u1_closed(theta, varphi, phi),
                                   u2_closed(theta, varphi, phi)});
        }
    }
    return grid;
}

void write_grid_csv(const Grid &grid, std::ostream &out) {
    out << "theta,varphi,u1,u2\n";
    for (const auto &p : grid.points) {
        out << format_g12(p.theta) << ',' << format_g12(p.varphi) << ','
            << format_g12(p.u1.as_double()) << ','
            << format_g12(p.u2.as_double()) << '\n';
    }
}

} // namespace uqeq::qubit
