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

#include "uqeq/intelligent.hpp"
#include "uqeq/format.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace uqeq::intelligent {

using hilbert::ComplexMatrix;
using hilbert::CVector;
using relations::PairMoments;

namespace {

constexpr cplx kI{0.0, 1.0};

ComplexMatrix shifted(const Observable &o, double mean) {
    return o.matrix() -
           cplx{mean, 0.0} * ComplexMatrix::identity(o.dim());
}

double residual_norm(const ComplexMatrix &m, const PureState &psi,
                     double subtract) {
    CVector v = m * psi.amplitudes();
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] -= subtract * psi[i];
    }
    return hilbert::norm(v);
}

} // namespace

GisParameter gis_parameter(const Observable &a, const Observable &b,
                           const PureState &psi) {
    const PairMoments pm = relations::pair_moments(a, b, psi);
    if (!(pm.varB > 1e-12)) {
        throw Error(ErrorKind::EigenstateOfB,
                    "var(B) = " + format_g12(pm.varB));
    }
    const cplx gamma = cplx{pm.expC, pm.expF} / (2.0 * pm.varB);
    const cplx lambda = pm.meanA + kI * gamma * pm.meanB;
    const double check = std::abs(std::norm(gamma) - pm.varA / pm.varB);
    return {gamma, lambda, check};
}

StateClassification classify_state(const Observable &a, const Observable &b,
                                   const PureState &psi) {
    const PairMoments pm = relations::pair_moments(a, b, psi);
    const ComplexMatrix sa = shifted(a, pm.meanA);
    const ComplexMatrix sb = shifted(b, pm.meanB);
    StateClassification out;

    if (pm.varB > 1e-12) {
        const cplx gamma = cplx{pm.expC, pm.expF} / (2.0 * pm.varB);
        out.gamma = gamma;
        out.gisResidual = residual_norm(sa + (kI * gamma) * sb, psi, 0.0);
        out.isGIS = *out.gisResidual <= kResidualCutoff;
        out.isOIS = out.isGIS && std::abs(gamma.imag()) <= kResidualCutoff;
    }

    const ComplexMatrix sa2 = sa * sa;
    const ComplexMatrix sb2 = sb * sb;
    out.criticalSumResidual = residual_norm(sa2 + sb2, psi, pm.varA + pm.varB);

    const double da = std::sqrt(pm.varA);
    const double db = std::sqrt(pm.varB);
    if (da > 1e-12 && db > 1e-12) {
        const ComplexMatrix k =
            cplx{1.0 / pm.varA, 0.0} * sa2 + cplx{1.0 / pm.varB, 0.0} * sb2;
        out.criticalProductResidual = residual_norm(k, psi, 2.0);
    }
    return out;
}

std::vector<IntelligentState> solve_intelligent_states(const Observable &a,
                                                       const Observable &b,
                                                       cplx gamma) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "observables A and B");
    }
    const ComplexMatrix m = a.matrix() + (kI * gamma) * b.matrix();
    const hilbert::EigenDecomposition eig = hilbert::general_eigen(m);

    std::vector<IntelligentState> out;
    for (std::size_t k = 0; k < eig.values.size(); ++k) {
        if (!eig.independent[k]) {
            continue;
        }
        PureState psi = PureState::normalized(eig.vectors[k]);
        const PairMoments pm = relations::pair_moments(a, b, psi);
        const double da = std::sqrt(pm.varA);
        const double db = std::sqrt(pm.varB);
        const bool checked = da >= 1e-10 && db >= 1e-10;
        std::optional<double> mismatch;
        if (checked) {
            mismatch = std::abs(da / db - std::abs(gamma));
        }
        StateClassification cls = classify_state(a, b, psi);
        out.push_back(IntelligentState{std::move(psi), eig.values[k],
                                       eig.residuals[k], std::move(cls), da,
                                       db, checked, mismatch});
    }
    return out;
}

namespace {

struct Ground {
    PureState state;
    double meanA;
    double meanB;
    double value;
};

class SumProblem {
  public:
    SumProblem(const Observable &a, const Observable &b)
        : a_(a), b_(b), a2_(a.matrix() * a.matrix()),
          b2_(b.matrix() * b.matrix()) {}

    // Ground state of (A-x)^2 + (B-y)^2 = A^2 + B^2 - 2xA - 2yB + x^2 + y^2.
    [[nodiscard]] Ground ground(double x, double y) const {
        const ComplexMatrix k = a2_ + b2_ - cplx{2.0 * x, 0.0} * a_.matrix() -
                                cplx{2.0 * y, 0.0} * b_.matrix();
        const auto eig = hilbert::hermitian_eigen(Observable(k, 1e-9));
        PureState psi = PureState::normalized(eig.vectors.front());
        const auto ma = relations::moments(a_, psi);
        const auto mb = relations::moments(b_, psi);
        return {std::move(psi), ma.mean, mb.mean, ma.variance + mb.variance};
    }

  private:
    const Observable &a_;
    const Observable &b_;
    ComplexMatrix a2_;
    ComplexMatrix b2_;
};

} // namespace

SumMinimum minimize_sum_variance(const Observable &a, const Observable &b,
                                 std::uint64_t seed, int starts) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "observables A and B");
    }
    if (starts < 1) {
        throw Error(ErrorKind::InvalidArgument, "need at least one start");
    }
    const SumProblem problem(a, b);
    std::optional<SumMinimum> best;

    for (int s = 0; s < starts; ++s) {
        const PureState init = hilbert::sample_state(
            hilbert::derive_seed(seed, {static_cast<std::uint64_t>(s)}),
            a.dim());
        double x = relations::moments(a, init).mean;
        double y = relations::moments(b, init).mean;
        int iters = 0;

        // Each step cannot increase <(A-x)^2 + (B-y)^2>.
        for (; iters < 500; ++iters) {
            const Ground g = problem.ground(x, y);
            const double step = std::hypot(g.meanA - x, g.meanB - y);
            x = g.meanA;
            y = g.meanB;
            if (step < 1e-13) {
                break;
            }
        }

        // Newton on G(x, y) = (x, y) - T(x, y), T the fixed-point map.
        auto residual = [&](double px, double py) {
            const Ground g = problem.ground(px, py);
            return std::array<double, 2>{px - g.meanA, py - g.meanB};
        };
        for (int n = 0; n < 30; ++n, ++iters) {
            const auto g0 = residual(x, y);
            const double r0 = std::hypot(g0[0], g0[1]);
            if (r0 < 1e-14) {
                break;
            }
            const double h = 1e-6;
            const auto gxp = residual(x + h, y);
            const auto gxm = residual(x - h, y);
            const auto gyp = residual(x, y + h);
            const auto gym = residual(x, y - h);
            const double j00 = (gxp[0] - gxm[0]) / (2 * h);
            const double j10 = (gxp[1] - gxm[1]) / (2 * h);
            const double j01 = (gyp[0] - gym[0]) / (2 * h);
            const double j11 = (gyp[1] - gym[1]) / (2 * h);
            const double det = j00 * j11 - j01 * j10;
            if (std::abs(det) < 1e-14) {
                break;
            }
            const double dx = -(j11 * g0[0] - j01 * g0[1]) / det;
            const double dy = -(-j10 * g0[0] + j00 * g0[1]) / det;
            double t = 1.0;
            bool moved = false;
            for (int ls = 0; ls < 20; ++ls, t *= 0.5) {
                const auto g1 = residual(x + t * dx, y + t * dy);
                if (std::hypot(g1[0], g1[1]) < r0) {
                    x += t * dx;
                    y += t * dy;
                    moved = true;
                    break;
                }
            }
            if (!moved) {
                break;
            }
        }

        Ground g = problem.ground(x, y);
        const double crit = classify_state(a, b, g.state).criticalSumResidual;
        if (!best || g.value < best->sumW) {
            best = SumMinimum{std::move(g.state), g.value, crit, iters};
        }
    }
    return std::move(*best);
}

} // namespace uqeq::intelligent
