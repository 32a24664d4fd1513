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

#include "uqeq/hilbert.hpp"
#include "uqeq/format.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace uqeq::hilbert {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char *what) {
    if (a != b) {
        throw Error(ErrorKind::DimensionMismatch,
                    std::string(what) + " (" + format_g12(a) + " vs " +
                        format_g12(b) + ")");
    }
}

} // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim)
    : dim_(dim), data_(dim * dim, cplx{0.0, 0.0}) {
    if (dim == 0) {
        throw Error(ErrorKind::InvalidArgument, "matrix dimension must be >= 1");
    }
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<cplx> entries)
    : dim_(dim), data_(std::move(entries)) {
    if (dim == 0 || data_.size() != dim * dim) {
        throw Error(ErrorKind::InvalidArgument,
                    "expected " + std::to_string(dim * dim) + " entries, got " +
                        std::to_string(data_.size()));
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> diag) {
    ComplexMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) {
        m(i, i) = diag[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const cplx> u,
                                   std::span<const cplx> v) {
    require_same_dim(u.size(), v.size(), "outer product");
    ComplexMatrix m(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            m(i, j) = u[i] * std::conj(v[j]);
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            out(j, i) = std::conj((*this)(i, j));
        }
    }
    return out;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto &z : data_) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

double ComplexMatrix::hermiticity_residual() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = i; j < dim_; ++j) {
            worst = std::max(worst,
                             std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        }
    }
    return worst;
}

cplx ComplexMatrix::trace() const {
    cplx t{0.0, 0.0};
    for (std::size_t i = 0; i < dim_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &rhs) {
    require_same_dim(dim_, rhs.dim_, "matrix sum");
    for (std::size_t k = 0; k < data_.size(); ++k) {
        data_[k] += rhs.data_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &rhs) {
    require_same_dim(dim_, rhs.dim_, "matrix difference");
    for (std::size_t k = 0; k < data_.size(); ++k) {
        data_[k] -= rhs.data_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(cplx s) {
    for (auto &z : data_) {
        z *= s;
    }
    return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix &rhs) {
    lhs += rhs;
    return lhs;
}

ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix &rhs) {
    lhs -= rhs;
    return lhs;
}

ComplexMatrix operator*(cplx s, ComplexMatrix m) {
    m *= s;
    return m;
}

ComplexMatrix operator*(const ComplexMatrix &lhs, const ComplexMatrix &rhs) {
    require_same_dim(lhs.dim(), rhs.dim(), "matrix product");
    const std::size_t n = lhs.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const cplx a = lhs(i, k);
            if (a == cplx{}) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                out(i, j) += a * rhs(k, j);
            }
        }
    }
    return out;
}

CVector operator*(const ComplexMatrix &m, std::span<const cplx> v) {
    require_same_dim(m.dim(), v.size(), "matrix-vector product");
    const std::size_t n = m.dim();
    CVector out(n, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        cplx s{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) {
            s += m(i, j) * v[j];
        }
        out[i] = s;
    }
    return out;
}

ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b) {
    return a * b - b * a;
}

ComplexMatrix anticommutator(const ComplexMatrix &a, const ComplexMatrix &b) {
    return a * b + b * a;
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
    require_same_dim(a.size(), b.size(), "inner product");
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

double norm(std::span<const cplx> v) {
    double s = 0.0;
    for (const auto &z : v) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

void fix_phase(CVector &v) {
    for (std::size_t k = 0; k < v.size(); ++k) {
        const double mag = std::abs(v[k]);
        if (mag > kPhaseCutoff) {
            const cplx rot = std::conj(v[k]) / mag;
            for (auto &w : v) {
                w *= rot;
            }
            v[k] = cplx{mag, 0.0};
            return;
        }
    }
}

Observable::Observable(const ComplexMatrix &m, double tol) : m_(m.dim()) {
    const double res = m.hermiticity_residual();
    if (!(res <= tol)) {
        throw Error(ErrorKind::NotHermitian,
                    "hermiticity residual " + format_g12(res) +
                        " exceeds " + format_g12(tol));
    }
    const std::size_t n = m.dim();
    for (std::size_t i = 0; i < n; ++i) {
        m_(i, i) = cplx{m(i, i).real(), 0.0};
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
            m_(i, j) = avg;
            m_(j, i) = std::conj(avg);
        }
    }
}

PureState::PureState(CVector amplitudes, double tol)
    : amps_(std::move(amplitudes)) {
    if (amps_.empty()) {
        throw Error(ErrorKind::InvalidArgument, "state dimension must be >= 1");
    }
    double n2 = 0.0;
    for (const auto &z : amps_) {
        n2 += std::norm(z);
    }
    if (!(std::abs(n2 - 1.0) <= tol)) {
        throw Error(ErrorKind::NotNormalized,
                    "squared norm " + format_g12(n2));
    }
}

PureState PureState::normalized(CVector amplitudes) {
    const double n = norm(amplitudes);
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw Error(ErrorKind::InvalidArgument, "cannot normalize zero vector");
    }
    for (auto &z : amplitudes) {
        z /= n;
    }
    return PureState(std::move(amplitudes));
}

PureState PureState::basis(std::size_t dim, std::size_t k) {
    if (k >= dim) {
        throw Error(ErrorKind::InvalidArgument, "basis index out of range");
    }
    CVector v(dim, cplx{0.0, 0.0});
    v[k] = 1.0;
    return PureState(std::move(v));
}

DensityState::DensityState(const ComplexMatrix &rho) : rho_(rho) {
    if (rho.hermiticity_residual() > 1e-12) {
        throw Error(ErrorKind::NotHermitian, "density matrix");
    }
    const cplx tr = rho.trace();
    if (std::abs(tr - 1.0) > 1e-12) {
        throw Error(ErrorKind::NotNormalized,
                    "density matrix trace " + format_g12(tr.real()));
    }
    const auto eig = hermitian_eigen(Observable(rho));
    if (eig.values.front().real() < -1e-10) {
        throw Error(ErrorKind::InvalidArgument,
                    "density matrix has eigenvalue " +
                        format_g12(eig.values.front().real()));
    }
    rho_ = Observable(rho).matrix();
}

DensityState DensityState::from_pure(const PureState &psi) {
    return DensityState(
        ComplexMatrix::outer(psi.amplitudes(), psi.amplitudes()));
}

std::vector<PureState> complement_basis(const PureState &psi) {
    const std::size_t n = psi.dim();
    std::vector<PureState> out;
    if (n == 1) {
        return out;
    }
    out.reserve(n - 1);
    // H = I - 2 v v^dagger / (v^dagger v), v = psi - alpha e_1, H psi = alpha e_1.
    const cplx x0 = psi[0];
    const cplx phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : cplx{1.0, 0.0};
    const cplx alpha = -phase;
    CVector v = psi.amplitudes();
    v[0] -= alpha;
    const double vv = std::pow(norm(v), 2);
    for (std::size_t col = 1; col < n; ++col) {
        CVector h(n, cplx{0.0, 0.0});
        const cplx scale = -2.0 * std::conj(v[col]) / vv;
        for (std::size_t i = 0; i < n; ++i) {
            h[i] = scale * v[i];
        }
        h[col] += 1.0;
        fix_phase(h);
        out.push_back(PureState::normalized(std::move(h)));
    }
    return out;
}

std::vector<PureState> rotate_basis(std::span<const PureState> basis,
                                    const ComplexMatrix &unitary) {
    require_same_dim(basis.size(), unitary.dim(), "basis rotation");
    std::vector<PureState> out;
    if (basis.empty()) {
        return out;
    }
    const std::size_t n = basis.front().dim();
    for (std::size_t k = 0; k < basis.size(); ++k) {
        CVector v(n, cplx{0.0, 0.0});
        for (std::size_t m = 0; m < basis.size(); ++m) {
            const cplx u = unitary(m, k);
            for (std::size_t i = 0; i < n; ++i) {
                v[i] += u * basis[m][i];
            }
        }
        out.push_back(PureState::normalized(std::move(v)));
    }
    return out;
}

ComplexMatrix expm(const ComplexMatrix &m) {
    const std::size_t n = m.dim();
    double one_norm = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            col += std::abs(m(i, j));
        }
        one_norm = std::max(one_norm, col);
    }
    int squarings = 0;
    if (one_norm > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(one_norm / 0.5)));
    }
    const ComplexMatrix x = cplx{std::ldexp(1.0, -squarings), 0.0} * m;

    // ||x|| <= 1/2, so 30 terms reach far below double precision.
    ComplexMatrix result = ComplexMatrix::identity(n);
    ComplexMatrix term = ComplexMatrix::identity(n);
    for (int k = 1; k <= 30; ++k) {
        term = cplx{1.0 / k, 0.0} * (term * x);
        result += term;
        if (term.frobenius_norm() <= 1e-18 * result.frobenius_norm()) {
            break;
        }
    }
    for (int s = 0; s < squarings; ++s) {
        result = result * result;
    }
    return result;
}

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double counter_uniform(std::uint64_t key, std::uint64_t counter) noexcept {
    const std::uint64_t bits = splitmix64(key ^ splitmix64(counter));
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

constexpr std::uint64_t kStateStream = 0x5354415445ULL;      // "STATE"
constexpr std::uint64_t kObservableStream = 0x4f42534552ULL; // "OBSER"
constexpr std::uint64_t kUnitaryStream = 0x554e495459ULL;    // "UNITY"

} // namespace

std::uint64_t derive_seed(std::uint64_t base,
                          std::initializer_list<std::uint64_t> counters) {
    std::uint64_t h = splitmix64(base);
    for (const auto c : counters) {
        h = splitmix64(h ^ splitmix64(c + 0x632be59bd9b4e019ULL));
    }
    return h;
}

double counter_normal(std::uint64_t key, std::uint64_t index) {
    // Box-Muller on the counter pair (2k, 2k+1); even/odd index picks cos/sin.
    const std::uint64_t pair = index / 2;
    const double u1 = 1.0 - counter_uniform(key, 2 * pair);
    const double u2 = counter_uniform(key, 2 * pair + 1);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return (index % 2 == 0) ? r * std::cos(angle) : r * std::sin(angle);
}

PureState sample_state(std::uint64_t seed, std::size_t dim) {
    if (dim == 0) {
        throw Error(ErrorKind::InvalidArgument, "dimension must be >= 1");
    }
    const std::uint64_t key = derive_seed(seed, {kStateStream, dim});
    CVector v(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        v[i] = cplx{counter_normal(key, 2 * i), counter_normal(key, 2 * i + 1)};
    }
    return PureState::normalized(std::move(v));
}

Observable sample_observable(std::uint64_t seed, std::size_t dim) {
    if (dim == 0) {
        throw Error(ErrorKind::InvalidArgument, "dimension must be >= 1");
    }
    const std::uint64_t key = derive_seed(seed, {kObservableStream, dim});
    const double s = std::sqrt(0.5);
    ComplexMatrix g(dim);
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            const double re = counter_normal(key, idx++);
            const double im = counter_normal(key, idx++);
            g(i, j) = cplx{s * re, s * im};
        }
    }
    ComplexMatrix h = cplx{0.5, 0.0} * (g + g.adjoint());
    return Observable(h);
}

ComplexMatrix sample_unitary(std::uint64_t seed, std::size_t dim) {
    if (dim == 0) {
        throw Error(ErrorKind::InvalidArgument, "dimension must be >= 1");
    }
    const std::uint64_t key = derive_seed(seed, {kUnitaryStream, dim});
    std::vector<CVector> cols(dim, CVector(dim));
    std::uint64_t idx = 0;
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t i = 0; i < dim; ++i) {
            const double re = counter_normal(key, idx++);
            const double im = counter_normal(key, idx++);
            cols[j][i] = cplx{re, im};
        }
    }
    // Modified Gram-Schmidt; positive diagonal of R gives the Haar measure.
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            const cplx p = inner(cols[k], cols[j]);
            for (std::size_t i = 0; i < dim; ++i) {
                cols[j][i] -= p * cols[k][i];
            }
        }
        const double n = norm(cols[j]);
        for (auto &z : cols[j]) {
            z /= n;
        }
    }
    ComplexMatrix u(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t i = 0; i < dim; ++i) {
            u(i, j) = cols[j][i];
        }
    }
    return u;
}

} // namespace uqeq::hilbert
