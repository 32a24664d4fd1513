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

#include <stdexcept>
#include <string>
#include <string_view>

namespace uqeq {

/// Failure categories surfaced by every module. Callers branch on the kind;
/// the message carries the numbers that triggered it.
enum class ErrorKind {
    SizeLimit,
    NoConvergence,
    DimensionMismatch,
    InvalidArgument,
    NotHermitian,
    NotNormalized,
    NotOrthogonal,
    ImaginaryResidue,
    Degenerate,
    ZeroDeviation,
    Indeterminate,
    TrivialSaturation,
    PhaseUndefined,
    EigenstateOfB,
    DegeneratePair,
    PolarizationUndefined,
    DegenerateDirection,
};

[[nodiscard]] constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::SizeLimit:
        return "size limit";
    case ErrorKind::NoConvergence:
        return "eigensolver did not converge";
    case ErrorKind::DimensionMismatch:
        return "dimension mismatch";
    case ErrorKind::InvalidArgument:
        return "invalid argument";
    case ErrorKind::NotHermitian:
        return "not hermitian";
    case ErrorKind::NotNormalized:
        return "not normalized";
    case ErrorKind::NotOrthogonal:
        return "not orthogonal";
    case ErrorKind::ImaginaryResidue:
        return "imaginary residue";
    case ErrorKind::Degenerate:
        return "degenerate decomposition";
    case ErrorKind::ZeroDeviation:
        return "undefined: zero deviation";
    case ErrorKind::Indeterminate:
        return "indeterminate bound";
    case ErrorKind::TrivialSaturation:
        return "psi saturates trivially";
    case ErrorKind::PhaseUndefined:
        return "phase undefined";
    case ErrorKind::EigenstateOfB:
        return "eigenstate of B";
    case ErrorKind::DegeneratePair:
        return "degenerate pair: A-B and A+B collinear";
    case ErrorKind::PolarizationUndefined:
        return "polarization undefined";
    case ErrorKind::DegenerateDirection:
        return "degenerate direction";
    }
    return "unknown";
}

class Error : public std::runtime_error {
  public:
    explicit Error(ErrorKind kind, const std::string &detail = {})
        : std::runtime_error(std::string(to_string(kind)) +
                             (detail.empty() ? "" : ": " + detail)),
          kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

} // namespace uqeq
