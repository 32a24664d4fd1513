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

#include "uqeq/relations.hpp"
#include "uqeq/format.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace uqeq::relations {

using hilbert::cplx;
using hilbert::inner;

namespace {

constexpr cplx kI{0.0, 1.0};

void require_dims(std::size_t a, std::size_t b, const char *what) {
    if (a != b) {
        throw Error(ErrorKind::DimensionMismatch,
                    std::string(what) + " (" + format_g12(a) + " vs " +
                        format_g12(b) + ")");
    }
}

void require_dims(const Observable &a, const Observable &b,
                  const PureState &psi) {
    require_dims(a.dim(), b.dim(), "observables A and B");
    require_dims(a.dim(), psi.dim(), "observable and state");
}

void require_orthogonal(const PureState &psi, const PureState &orth) {
    require_dims(psi.dim(), orth.dim(), "state and orthogonal state");
    const double ov = std::abs(inner(psi.amplitudes(), orth.amplitudes()));
    if (ov > kOrthoTol) {
        throw Error(ErrorKind::NotOrthogonal,
                    "|<psi|orth>| = " + format_g12(ov));
    }
}

void require_complement(const PureState &psi,
                        std::span<const PureState> basis) {
    if (basis.size() + 1 != psi.dim()) {
        throw Error(ErrorKind::NotOrthogonal,
                    "complement needs " + std::to_string(psi.dim() - 1) +
                        " vectors, got " + std::to_string(basis.size()));
    }
    for (std::size_t k = 0; k < basis.size(); ++k) {
        require_orthogonal(psi, basis[k]);
        for (std::size_t l = k + 1; l < basis.size(); ++l) {
            const double ov =
                std::abs(inner(basis[k].amplitudes(), basis[l].amplitudes()));
            if (ov > kOrthoTol) {
                throw Error(ErrorKind::NotOrthogonal,
                            "complement vectors " + std::to_string(k) + "," +
                                std::to_string(l) + " overlap " +
                                format_g12(ov));
            }
        }
    }
}

double checked_real(cplx z, const char *what) {
    if (std::abs(z.imag()) > kImagTol) {
        throw Error(ErrorKind::ImaginaryResidue,
                    std::string(what) + " has imaginary part " +
                        format_g12(z.imag()));
    }
    return z.real();
}

cplx element(const PureState &bra, const ComplexMatrix &m,
             const PureState &ket) {
    return inner(bra.amplitudes(), m * ket.amplitudes());
}

// A + coeff * B
ComplexMatrix combine(const ComplexMatrix &a, cplx coeff,
                      const ComplexMatrix &b) {
    return a + coeff * b;
}

// Pi X^dagger |psi>, normalized: the unit vector maximizing |<psi|X|orth>|.
PureState tight_state_for(const ComplexMatrix &x, const PureState &psi) {
    CVector v = x.adjoint() * psi.amplitudes();
    for (int pass = 0; pass < 2; ++pass) {
        const cplx p = inner(psi.amplitudes(), v);
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] -= p * psi[i];
        }
    }
    const double n = hilbert::norm(v);
    if (n <= 1e-10) {
        throw Error(ErrorKind::TrivialSaturation,
                    "projected vector norm " + std::to_string(n));
    }
    for (auto &z : v) {
        z /= n;
    }
    hilbert::fix_phase(v);
    return PureState::normalized(std::move(v));
}

struct Deviations {
    double a;
    double b;
};

Deviations deviations(const PairMoments &pm) {
    if (!(pm.varA > 1e-12) || !(pm.varB > 1e-12)) {
        throw Error(ErrorKind::ZeroDeviation,
                    "var(A) = " + format_g12(pm.varA) +
                        ", var(B) = " + format_g12(pm.varB));
    }
    return {std::sqrt(pm.varA), std::sqrt(pm.varB)};
}

ComplexMatrix normalized_combination(const Observable &a, const Observable &b,
                                     const Deviations &dev, Sign sign) {
    return combine(cplx{1.0 / dev.a, 0.0} * a.matrix(),
                   to_double(sign) * kI / dev.b, b.matrix());
}

ComplexMatrix theta3_operator(const Observable &a, const Observable &b,
                              double omega, Sign sign) {
    return combine(a.matrix(), to_double(sign) * kI * std::polar(1.0, -omega),
                   b.matrix());
}

double omega_of(const PairMoments &pm) {
    if (std::abs(pm.expC) < 1e-12 && std::abs(pm.expF) < 1e-12) {
        throw Error(ErrorKind::PhaseUndefined, "<C> = <F> = 0");
    }
    return std::atan2(pm.expF, pm.expC);
}

} // namespace

double real_expectation(const ComplexMatrix &m, const PureState &psi,
                        const char *what) {
    require_dims(m.dim(), psi.dim(), what);
    return checked_real(element(psi, m, psi), what);
}

MomentReport moments(const Observable &o, const PureState &psi) {
    require_dims(o.dim(), psi.dim(), "observable and state");
    const CVector opsi = o.matrix() * psi.amplitudes();
    const double mean =
        checked_real(inner(psi.amplitudes(), opsi), "<O>");
    double var = 0.0;
    for (std::size_t i = 0; i < opsi.size(); ++i) {
        var += std::norm(opsi[i] - mean * psi[i]);
    }
    return {mean, var};
}

MomentReport moments(const Observable &o, const DensityState &rho) {
    require_dims(o.dim(), rho.dim(), "observable and density matrix");
    const ComplexMatrix &m = o.matrix();
    const double mean = checked_real((rho.matrix() * m).trace(), "Tr(rho O)");
    const double second =
        checked_real((rho.matrix() * (m * m)).trace(), "Tr(rho O^2)");
    return {mean, std::max(0.0, second - mean * mean)};
}

namespace {

template <typename State, typename Expect>
PairMoments pair_moments_impl(const Observable &a, const Observable &b,
                              const State &state, Expect expect) {
    const auto ma = moments(a, state);
    const auto mb = moments(b, state);
    const std::size_t n = a.dim();
    const ComplexMatrix id = ComplexMatrix::identity(n);
    const ComplexMatrix c = -kI * hilbert::commutator(a.matrix(), b.matrix());
    const ComplexMatrix sa = a.matrix() - cplx{ma.mean, 0.0} * id;
    const ComplexMatrix sb = b.matrix() - cplx{mb.mean, 0.0} * id;
    const ComplexMatrix f = hilbert::anticommutator(sa, sb);
    PairMoments pm;
    pm.meanA = ma.mean;
    pm.meanB = mb.mean;
    pm.varA = ma.variance;
    pm.varB = mb.variance;
    pm.expC = expect(c, "<C>");
    pm.expF = expect(f, "<F>");
    return pm;
}

} // namespace

PairMoments pair_moments(const Observable &a, const Observable &b,
                         const PureState &psi) {
    require_dims(a, b, psi);
    return pair_moments_impl(a, b, psi,
                             [&](const ComplexMatrix &m, const char *what) {
                                 return real_expectation(m, psi, what);
                             });
}

PairMoments pair_moments(const Observable &a, const Observable &b,
                         const DensityState &rho) {
    require_dims(a.dim(), b.dim(), "observables A and B");
    require_dims(a.dim(), rho.dim(), "observable and density matrix");
    return pair_moments_impl(a, b, rho,
                             [&](const ComplexMatrix &m, const char *what) {
                                 return checked_real((rho.matrix() * m).trace(),
                                                     what);
                             });
}

VaidmanDecomposition vaidman_decompose(const Observable &o,
                                       const PureState &psi) {
    require_dims(o.dim(), psi.dim(), "observable and state");
    const CVector opsi = o.matrix() * psi.amplitudes();
    const double mean = checked_real(inner(psi.amplitudes(), opsi), "<O>");
    CVector rest(opsi.size());
    for (std::size_t i = 0; i < opsi.size(); ++i) {
        rest[i] = opsi[i] - mean * psi[i];
    }
    const double dev = hilbert::norm(rest);
    if (dev < 1e-10) {
        throw Error(ErrorKind::Degenerate,
                    "deviation " + format_g12(dev) + " (eigenstate)");
    }
    for (auto &z : rest) {
        z /= dev;
    }
    return {mean, dev, PureState::normalized(std::move(rest))};
}

double maccone_pati_l1(const Observable &a, const Observable &b,
                       const PureState &psi, const PureState &orth,
                       Sign sign) {
    require_dims(a, b, psi);
    require_orthogonal(psi, orth);
    const double s = to_double(sign);
    const ComplexMatrix comm = hilbert::commutator(a.matrix(), b.matrix());
    const double lead =
        checked_real(s * kI * element(psi, comm, psi), "i<[A,B]>");
    const cplx amp = element(psi, combine(a.matrix(), s * kI, b.matrix()), orth);
    return lead + std::norm(amp);
}

double maccone_pati_l2(const Observable &a, const Observable &b,
                       const PureState &psi) {
    require_dims(a, b, psi);
    return 0.5 * moments(Observable(a.matrix() + b.matrix()), psi).variance;
}

double maccone_pati_l3(const Observable &a, const Observable &b,
                       const PureState &psi) {
    require_dims(a, b, psi);
    return 0.5 * moments(Observable(a.matrix() - b.matrix()), psi).variance;
}

AmendedRur amended_rur(const Observable &a, const Observable &b,
                       const PureState &psi, const PureState &orth,
                       Sign sign) {
    require_dims(a, b, psi);
    require_orthogonal(psi, orth);
    const PairMoments pm = pair_moments(a, b, psi);
    const Deviations dev = deviations(pm);
    const double theta1 =
        std::norm(element(psi, normalized_combination(a, b, dev, sign), orth));
    const double numerator = -to_double(sign) * pm.expC / 2.0;
    const double denominator = 1.0 - theta1 / 2.0;
    if (std::abs(denominator) <= 1e-10) {
        throw Error(ErrorKind::Indeterminate,
                    "1 - theta1/2 = " + format_g12(denominator) +
                        ", numerator " + format_g12(numerator));
    }
    return {numerator / denominator, theta1, denominator};
}

EqualityCheck theorem1_equality(const Observable &a, const Observable &b,
                                const PureState &psi,
                                std::span<const PureState> basis, Sign sign) {
    require_dims(a, b, psi);
    require_complement(psi, basis);
    const PairMoments pm = pair_moments(a, b, psi);
    const double s = to_double(sign);
    const ComplexMatrix x = combine(a.matrix(), s * kI, b.matrix());
    // <psi|X|k> = <X^dagger psi|k>
    const CVector bra = x.adjoint() * psi.amplitudes();
    double sum = 0.0;
    for (const auto &k : basis) {
        sum += std::norm(inner(bra, k.amplitudes()));
    }
    const double lhs = pm.varA + pm.varB;
    const double rhs = -s * pm.expC + sum;
    return {lhs, rhs, std::abs(lhs - rhs)};
}

EqualityCheck theorem2_equality(const Observable &a, const Observable &b,
                                const PureState &psi,
                                std::span<const PureState> basis, Sign sign) {
    require_dims(a, b, psi);
    require_complement(psi, basis);
    const PairMoments pm = pair_moments(a, b, psi);
    const Deviations dev = deviations(pm);
    const CVector bra = normalized_combination(a, b, dev, sign).adjoint() *
                        psi.amplitudes();
    double sum = 0.0;
    for (const auto &k : basis) {
        sum += std::norm(inner(bra, k.amplitudes()));
    }
    const double numerator = -to_double(sign) * pm.expC / 2.0;
    const double denominator = 1.0 - sum / 2.0;
    if (std::abs(denominator) <= 1e-10) {
        throw Error(ErrorKind::Indeterminate,
                    "1 - sum/2 = " + format_g12(denominator) +
                        ", numerator " + format_g12(numerator));
    }
    const double lhs = dev.a * dev.b;
    const double rhs = numerator / denominator;
    return {lhs, rhs, std::abs(lhs - rhs)};
}

std::vector<double> hierarchy_bounds(const Observable &a, const Observable &b,
                                     const PureState &psi,
                                     std::span<const PureState> basis,
                                     Sign sign) {
    require_dims(a, b, psi);
    require_complement(psi, basis);
    const PairMoments pm = pair_moments(a, b, psi);
    const double s = to_double(sign);
    const CVector bra =
        combine(a.matrix(), s * kI, b.matrix()).adjoint() * psi.amplitudes();
    std::vector<double> out;
    out.reserve(basis.size());
    double acc = -s * pm.expC;
    for (const auto &k : basis) {
        acc += std::norm(inner(bra, k.amplitudes()));
        out.push_back(acc);
    }
    return out;
}

PureState optimal_orthogonal_state(const Observable &a, const Observable &b,
                                   const PureState &psi, Sign sign) {
    require_dims(a, b, psi);
    return tight_state_for(
        combine(a.matrix(), to_double(sign) * kI, b.matrix()), psi);
}

PureState theta1_optimal_state(const Observable &a, const Observable &b,
                               const PureState &psi, Sign sign) {
    require_dims(a, b, psi);
    const Deviations dev = deviations(pair_moments(a, b, psi));
    return tight_state_for(normalized_combination(a, b, dev, sign), psi);
}

Theta3Bound theta3_bound(const Observable &a, const Observable &b,
                         const PureState &psi, const PureState &orth) {
    require_dims(a, b, psi);
    require_orthogonal(psi, orth);
    const PairMoments pm = pair_moments(a, b, psi);
    const double omega = omega_of(pm);
    const double radius = std::hypot(pm.expC, pm.expF);
    Theta3Bound best{};
    bool first = true;
    for (const Sign sign : {Sign::Minus, Sign::Plus}) {
        const double theta3 =
            std::norm(element(psi, theta3_operator(a, b, omega, sign), orth));
        const double bound = -to_double(sign) * radius + theta3;
        if (first || bound > best.bound) {
            best = {bound, omega, theta3, sign};
            first = false;
        }
    }
    return best;
}

PureState theta3_optimal_state(const Observable &a, const Observable &b,
                               const PureState &psi) {
    require_dims(a, b, psi);
    const double omega = omega_of(pair_moments(a, b, psi));
    return tight_state_for(theta3_operator(a, b, omega, Sign::Minus), psi);
}

namespace {

template <typename F> Quantity guarded(F &&f) {
    try {
        return Quantity::of(f());
    } catch (const Error &e) {
        return Quantity::missing(std::string(to_string(e.kind())));
    }
}

// The tight orthogonal state, or any orthogonal state when every
// complement term vanishes and the choice does not matter.
template <typename Make> PureState tight_or_any(Make &&make, const PureState &psi) {
    try {
        return make();
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::TrivialSaturation || psi.dim() < 2) {
            throw;
        }
        return hilbert::complement_basis(psi).front();
    }
}

} // namespace

UncertaintyReport uncertainty_report(const Observable &a, const Observable &b,
                                     const PureState &psi) {
    require_dims(a, b, psi);
    if (psi.dim() < 2) {
        throw Error(ErrorKind::InvalidArgument,
                    "uncertainty report needs dimension >= 2");
    }
    UncertaintyReport r;
    r.pair = pair_moments(a, b, psi);
    const PairMoments &pm = r.pair;
    r.sumW = pm.varA + pm.varB;
    r.prodU = pm.varA * pm.varB;
    r.rur = pm.expC * pm.expC / 4.0;
    r.surBound = r.rur + pm.expF * pm.expF / 4.0;
    r.upsilon = r.prodU - r.surBound;

    auto l1 = [&](Sign sign) {
        return guarded([&] {
            const PureState orth = tight_or_any(
                [&] { return optimal_orthogonal_state(a, b, psi, sign); }, psi);
            return maccone_pati_l1(a, b, psi, orth, sign);
        });
    };
    r.l1Plus = l1(Sign::Plus);
    r.l1Minus = l1(Sign::Minus);

    r.l2 = maccone_pati_l2(a, b, psi);
    r.l3 = maccone_pati_l3(a, b, psi);
    r.l2Prime = std::max(r.l2, r.l3);

    auto amended = [&](Sign sign) {
        return guarded([&] {
            const PureState orth = tight_or_any(
                [&] { return theta1_optimal_state(a, b, psi, sign); }, psi);
            return amended_rur(a, b, psi, orth, sign).bound;
        });
    };
    r.amendedRURPlus = amended(Sign::Plus);
    r.amendedRURMinus = amended(Sign::Minus);

    // Branch with sign*i<[A,B]> = -sign*<C> >= 0.
    const Sign branch = pm.expC < 0.0 ? Sign::Plus : Sign::Minus;
    const double s = to_double(branch);
    r.theta1 = guarded([&] {
        const Deviations dev = deviations(pm);
        const PureState orth = tight_or_any(
            [&] { return theta1_optimal_state(a, b, psi, branch); }, psi);
        return std::norm(element(
            psi, normalized_combination(a, b, dev, branch), orth));
    });
    r.theta2 = guarded([&] {
        const PureState orth = tight_or_any(
            [&] { return optimal_orthogonal_state(a, b, psi, branch); }, psi);
        return std::norm(
            element(psi, combine(a.matrix(), s * kI, b.matrix()), orth));
    });
    auto theta3 = [&]() {
        const PureState orth =
            tight_or_any([&] { return theta3_optimal_state(a, b, psi); }, psi);
        return theta3_bound(a, b, psi, orth);
    };
    r.theta3 = guarded([&] { return theta3().theta3; });
    r.theta3Bound = guarded([&] { return theta3().bound; });

    r.vaidmanDeviationA =
        guarded([&] { return vaidman_decompose(a, psi).deviation; });
    r.vaidmanDeviationB =
        guarded([&] { return vaidman_decompose(b, psi).deviation; });
    return r;
}

} // namespace uqeq::relations
