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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "uqeq/error.hpp"

/// Dense complex linear algebra for the small (d <= 64) operators used
/// throughout the library: matrix/vector types, validated observables and
/// states, two eigensolvers, orthonormal complements and seeded sampling.
namespace uqeq::hilbert {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

inline constexpr std::size_t kMaxDim = 64;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kNormTol = 1e-12;
inline constexpr double kPhaseCutoff = 1e-8;

/// Square d x d complex matrix, row-major.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim);
    ComplexMatrix(std::size_t dim, std::vector<cplx> entries);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const cplx> diag);
    /// |u><v|
    static ComplexMatrix outer(std::span<const cplx> u,
                               std::span<const cplx> v);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] cplx operator()(std::size_t i, std::size_t j) const {
        return data_[i * dim_ + j];
    }
    cplx &operator()(std::size_t i, std::size_t j) {
        return data_[i * dim_ + j];
    }
    [[nodiscard]] std::span<const cplx> entries() const noexcept {
        return data_;
    }

    [[nodiscard]] ComplexMatrix adjoint() const;
    [[nodiscard]] double frobenius_norm() const;
    /// max_ij |M_ij - conj(M_ji)|
    [[nodiscard]] double hermiticity_residual() const;
    [[nodiscard]] cplx trace() const;

    ComplexMatrix &operator+=(const ComplexMatrix &rhs);
    ComplexMatrix &operator-=(const ComplexMatrix &rhs);
    ComplexMatrix &operator*=(cplx s);

    friend bool operator==(const ComplexMatrix &,
                           const ComplexMatrix &) = default;

  private:
    std::size_t dim_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix &rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix &rhs);
ComplexMatrix operator*(cplx s, ComplexMatrix m);
ComplexMatrix operator*(const ComplexMatrix &lhs, const ComplexMatrix &rhs);
CVector operator*(const ComplexMatrix &m, std::span<const cplx> v);

/// [A, B] = AB - BA
ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b);
/// {A, B} = AB + BA
ComplexMatrix anticommutator(const ComplexMatrix &a, const ComplexMatrix &b);

/// <a|b>, antilinear in the first argument.
cplx inner(std::span<const cplx> a, std::span<const cplx> b);
double norm(std::span<const cplx> v);
/// Rotates v so that its first component of magnitude > kPhaseCutoff is real
/// and nonnegative. No-op for vectors without such a component.
void fix_phase(CVector &v);

/// Hermitian matrix. Construction checks the residual against `tol` and then
/// stores the exactly symmetrized matrix (M + M^dagger)/2.
class Observable {
  public:
    explicit Observable(const ComplexMatrix &m, double tol = kHermitianTol);

    [[nodiscard]] const ComplexMatrix &matrix() const noexcept { return m_; }
    [[nodiscard]] std::size_t dim() const noexcept { return m_.dim(); }

  private:
    ComplexMatrix m_;
};

/// Normalized state vector.
class PureState {
  public:
    explicit PureState(CVector amplitudes, double tol = kNormTol);

    /// Scales `amplitudes` to unit norm; throws InvalidArgument on a zero
    /// vector.
    static PureState normalized(CVector amplitudes);
    static PureState basis(std::size_t dim, std::size_t k);

    [[nodiscard]] std::size_t dim() const noexcept { return amps_.size(); }
    [[nodiscard]] const CVector &amplitudes() const noexcept { return amps_; }
    [[nodiscard]] cplx operator[](std::size_t i) const { return amps_[i]; }

  private:
    CVector amps_;
};

/// Positive semidefinite unit-trace matrix.
class DensityState {
  public:
    explicit DensityState(const ComplexMatrix &rho);
    static DensityState from_pure(const PureState &psi);

    [[nodiscard]] const ComplexMatrix &matrix() const noexcept { return rho_; }
    [[nodiscard]] std::size_t dim() const noexcept { return rho_.dim(); }

  private:
    ComplexMatrix rho_;
};

struct EigenDecomposition {
    std::vector<cplx> values;
    std::vector<CVector> vectors;
    /// ||M v - lambda v|| per pair, against the input matrix.
    std::vector<double> residuals;
    /// False for a vector numerically dependent on an earlier one.
    std::vector<bool> independent;
    bool defective = false;
    int iterations = 0;
};

/// Cyclic Jacobi. Eigenvalues ascending; ties ordered lexicographically by
/// the phase-fixed eigenvectors.
EigenDecomposition hermitian_eigen(const Observable &m);

/// Hessenberg reduction followed by shifted complex QR to Schur form, with
/// eigenvectors from triangular back-substitution. Values come out in Schur
/// order.
EigenDecomposition general_eigen(const ComplexMatrix &m);

/// d-1 vectors completing psi to an orthonormal basis, taken from the
/// Householder reflector that maps psi onto e_1.
std::vector<PureState> complement_basis(const PureState &psi);

/// Mixes a complement basis with a unitary acting inside its span; the
/// result spans the same subspace.
std::vector<PureState> rotate_basis(std::span<const PureState> basis,
                                    const ComplexMatrix &unitary);

/// Matrix exponential by scaling and squaring of a Taylor series.
ComplexMatrix expm(const ComplexMatrix &m);

/// Combines a base seed with further counters into a new seed.
std::uint64_t derive_seed(std::uint64_t base,
                          std::initializer_list<std::uint64_t> counters);

/// Standard normal number `index` of the stream keyed by `key`. Counter
/// based: the value does not depend on any previously drawn number.
double counter_normal(std::uint64_t key, std::uint64_t index);

PureState sample_state(std::uint64_t seed, std::size_t dim);
Observable sample_observable(std::uint64_t seed, std::size_t dim);
/// Haar unitary from the QR factorization of a complex Ginibre matrix.
ComplexMatrix sample_unitary(std::uint64_t seed, std::size_t dim);

} // namespace uqeq::hilbert
