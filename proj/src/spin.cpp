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

#include "uqeq/spin.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "uqeq/error.hpp"
#include "uqeq/format.hpp"
#include "uqeq/relations.hpp"

namespace uqeq::spin {

using hilbert::ComplexMatrix;
using hilbert::cplx;
using hilbert::CVector;
using relations::Sign;

namespace {

constexpr double kAlgebraTol = 1e-10;
constexpr double kFrameTol = 1e-10;
constexpr double kVanishTol = 1e-10;
const cplx kI{0.0, 1.0};

int checked_count(int n) {
    if (n < 1 || n > kMaxParticles) {
        throw Error(ErrorKind::SizeLimit,
                    "particle number " + std::to_string(n) +
                        " outside [1, " + std::to_string(kMaxParticles) + "]");
    }
    return n;
}

// J+ on |j, m>, m = j - k.
ComplexMatrix raising(int n) {
    const std::size_t d = static_cast<std::size_t>(n) + 1;
    const double j = 0.5 * n;
    ComplexMatrix jp(d);
    for (std::size_t k = 1; k < d; ++k) {
        const double m = j - static_cast<double>(k);
        jp(k - 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }
    return jp;
}

Observable make_jx(int n) {
    const ComplexMatrix jp = raising(n);
    return Observable(cplx{0.5, 0.0} * (jp + jp.adjoint()));
}

Observable make_jy(int n) {
    const ComplexMatrix jp = raising(n);
    return Observable(cplx{0.0, -0.5} * (jp - jp.adjoint()));
}

Observable make_jz(int n) {
    const std::size_t d = static_cast<std::size_t>(n) + 1;
    CVector diag(d);
    for (std::size_t k = 0; k < d; ++k) {
        diag[k] = 0.5 * n - static_cast<double>(k);
    }
    return Observable(ComplexMatrix::diagonal(diag));
}

double max_abs(const ComplexMatrix &m) {
    double best = 0.0;
    for (const cplx z : m.entries()) {
        best = std::max(best, std::abs(z));
    }
    return best;
}

double dot(const Vec3 &a, const Vec3 &b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Vec3 cross(const Vec3 &a, const Vec3 &b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

Vec3 scaled(const Vec3 &a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }

Vec3 unit(const Vec3 &a) { return scaled(a, 1.0 / std::sqrt(dot(a, a))); }

void require_frame(const Frame &f) {
    const Vec3 *v[3] = {&f.n1, &f.n2, &f.n3};
    for (int p = 0; p < 3; ++p) {
        for (int q = p; q < 3; ++q) {
            const double want = p == q ? 1.0 : 0.0;
            if (std::abs(dot(*v[p], *v[q]) - want) > kFrameTol) {
                throw Error(ErrorKind::InvalidArgument,
                            "frame is not orthonormal");
            }
        }
    }
}

double mean_of(const Observable &o, const PureState &psi) {
    return relations::moments(o, psi).mean;
}

} // namespace

SpinSystem::SpinSystem(int nParticles)
    : n_(checked_count(nParticles)), jx_(make_jx(n_)), jy_(make_jy(n_)),
      jz_(make_jz(n_)) {
    const ComplexMatrix &x = jx_.matrix();
    const ComplexMatrix &y = jy_.matrix();
    const ComplexMatrix &z = jz_.matrix();
    const double comm =
        std::max({max_abs(hilbert::commutator(x, y) - kI * z),
                  max_abs(hilbert::commutator(y, z) - kI * x),
                  max_abs(hilbert::commutator(z, x) - kI * y)});
    const ComplexMatrix casimir =
        x * x + y * y + z * z -
        cplx{j() * (j() + 1.0), 0.0} * ComplexMatrix::identity(dim());
    if (comm > kAlgebraTol || max_abs(casimir) > kAlgebraTol) {
        throw Error(ErrorKind::InvalidArgument,
                    "spin algebra check failed for N = " + std::to_string(n_));
    }
}

Observable SpinSystem::along(const Vec3 &n) const {
    return Observable(cplx{n[0], 0.0} * jx_.matrix() +
                      cplx{n[1], 0.0} * jy_.matrix() +
                      cplx{n[2], 0.0} * jz_.matrix());
}

SpinSystem build_spin(int nParticles) { return SpinSystem(nParticles); }

PureState rotate(const SpinSystem &sys, const PureState &psi, const Vec3 &n,
                 double angle) {
    if (psi.dim() != sys.dim()) {
        throw Error(ErrorKind::DimensionMismatch);
    }
    const ComplexMatrix u =
        hilbert::expm(cplx{0.0, -angle} * sys.along(n).matrix());
    return PureState::normalized(u * psi.amplitudes());
}

PureState coherent_spin_state(const SpinSystem &sys, double theta,
                              double varphi) {
    return rotate(sys, PureState::basis(sys.dim(), 0),
                  {-std::sin(varphi), std::cos(varphi), 0.0}, theta);
}

PureState one_axis_twist(const SpinSystem &sys, double theta0, double varphi0,
                         double mu) {
    CVector v = coherent_spin_state(sys, theta0, varphi0).amplitudes();
    for (std::size_t k = 0; k < v.size(); ++k) {
        const double m = sys.m(k);
        v[k] *= std::polar(1.0, -mu * m * m);
    }
    return PureState::normalized(std::move(v));
}

Frame optimal_frame(const SpinSystem &sys, const PureState &psi) {
    const Vec3 mean{mean_of(sys.jx(), psi), mean_of(sys.jy(), psi),
                    mean_of(sys.jz(), psi)};
    if (std::sqrt(dot(mean, mean)) <= kVanishTol) {
        throw Error(ErrorKind::PolarizationUndefined);
    }
    const Vec3 n2 = unit(mean);
    // Seed the perpendicular plane with the axis least aligned with n2.
    std::size_t seed = 0;
    for (std::size_t k = 1; k < 3; ++k) {
        if (std::abs(n2[k]) < std::abs(n2[seed])) {
            seed = k;
        }
    }
    Vec3 e{0.0, 0.0, 0.0};
    e[seed] = 1.0;
    const Vec3 u = unit(cross(n2, cross(e, n2)));
    const Vec3 v = cross(n2, u);

    const PureState &s = psi;
    const auto ju = sys.along(u);
    const auto jv = sys.along(v);
    const auto mu = relations::moments(ju, s);
    const auto mv = relations::moments(jv, s);
    const double cuv =
        0.5 * relations::real_expectation(
                  hilbert::anticommutator(ju.matrix(), jv.matrix()), s,
                  "covariance") -
        mu.mean * mv.mean;
    // Largest-variance angle; the least-variance direction is a quarter turn
    // away.
    const double alpha =
        0.5 * std::atan2(2.0 * cuv, mu.variance - mv.variance) + M_PI / 2.0;
    const Vec3 n1 = unit({std::cos(alpha) * u[0] + std::sin(alpha) * v[0],
                          std::cos(alpha) * u[1] + std::sin(alpha) * v[1],
                          std::cos(alpha) * u[2] + std::sin(alpha) * v[2]});
    return {n1, n2, cross(n1, n2)};
}

SqueezingReport squeezing_report(const SpinSystem &sys, const PureState &psi,
                                 const Frame &frame,
                                 const std::optional<PureState> &orth) {
    if (psi.dim() != sys.dim()) {
        throw Error(ErrorKind::DimensionMismatch);
    }
    require_frame(frame);
    const Observable a = sys.along(frame.n1);
    const Observable b = sys.along(frame.n3);
    const double mean2 = mean_of(sys.along(frame.n2), psi);
    if (std::abs(mean2) <= kVanishTol) {
        throw Error(ErrorKind::PolarizationUndefined);
    }
    const auto pm = relations::pair_moments(a, b, psi);
    if (std::sqrt(pm.varA) <= kVanishTol || std::sqrt(pm.varB) <= kVanishTol) {
        throw Error(ErrorKind::DegenerateDirection);
    }
    const Sign sign = pm.expC < 0.0 ? Sign::Plus : Sign::Minus;
    PureState complement = orth ? *orth : PureState::basis(sys.dim(), 0);
    if (!orth) {
        try {
            complement = relations::theta1_optimal_state(a, b, psi, sign);
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::TrivialSaturation) {
                throw;
            }
            complement = hilbert::complement_basis(psi).front();
        }
    }
    const auto amended = relations::amended_rur(a, b, psi, complement, sign);

    const double nn = static_cast<double>(sys.n());
    SqueezingReport r{};
    r.meanJn2 = mean2;
    r.varJn1 = pm.varA;
    r.varJn3 = pm.varB;
    r.xiH2 = 2.0 * pm.varA / std::abs(mean2);
    r.xiR2 = nn * pm.varA / (mean2 * mean2);
    r.qfi = 4.0 * pm.varB;
    r.chi2 = nn / r.qfi;
    r.theta1 = amended.theta1;
    r.generalizedBound = r.chi2 / (amended.denominator * amended.denominator);
    return r;
}

bool squeezed_rur(double variance, double expC) {
    return variance < std::abs(expC) / 2.0;
}

bool squeezed_theta1(double variance, double expC, double theta1) {
    return variance < std::abs(expC) / (2.0 - theta1);
}

bool squeezed_theta2(double variance, double expC, double theta2) {
    return variance < (std::abs(expC) + theta2) / 2.0;
}

std::vector<SweepRow> oat_sweep(const SpinSystem &sys, double theta0,
                                double varphi0, double muLo, double muHi,
                                std::size_t count) {
    if (count == 0) {
        throw Error(ErrorKind::InvalidArgument, "sweep needs at least 1 point");
    }
    std::vector<SweepRow> rows;
    rows.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double mu =
            count == 1 ? muLo
                       : muLo + (muHi - muLo) * static_cast<double>(k) /
                                    static_cast<double>(count - 1);
        const PureState psi = one_axis_twist(sys, theta0, varphi0, mu);
        rows.push_back(
            {mu, squeezing_report(sys, psi, optimal_frame(sys, psi))});
    }
    return rows;
}

void write_sweep_csv(const std::vector<SweepRow> &rows, std::ostream &out) {
    out << "mu,xiH2,xiR2,chi2,generalized_bound\n";
    for (const auto &row : rows) {
        out << format_g12(row.mu) << ',' << format_g12(row.report.xiH2) << ','
            << format_g12(row.report.xiR2) << ','
            << format_g12(row.report.chi2) << ','
            << format_g12(row.report.generalizedBound) << '\n';
    }
}

} // namespace uqeq::spin
