// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The upbound authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <complex>
#include <cstddef>
#include <random>
#include <span>
#include <vector>

namespace upb {

using Complex = std::complex<double>;
using Rng = std::mt19937_64;

/// Dense row-major complex matrix. Entries are always finite.
class ComplexMatrix {
  public:
    /// rows x cols of zeros.
    ComplexMatrix(std::size_t rows, std::size_t cols);
    /// Takes ownership of row-major `entries`; throws DimensionError on a size
    /// mismatch and ValidationError on non-finite entries.
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const Complex> diag);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Complex operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    std::span<const Complex> entries() const noexcept { return data_; }

    ComplexMatrix adjoint() const;

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator*(Complex s, const ComplexMatrix& a);

  private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> data_;
};

/// Square matrix with ||U*U - I|| <= tolerance and |det U| = 1 within 1e-6.
/// Construction rejects anything else instead of renormalizing.
class UnitaryMatrix {
  public:
    static constexpr double default_tolerance = 1e-9;

    explicit UnitaryMatrix(ComplexMatrix m, double tolerance = default_tolerance);

    static UnitaryMatrix identity(std::size_t n);

    std::size_t dim() const noexcept { return m_.rows(); }
    const ComplexMatrix& matrix() const noexcept { return m_; }
    Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  private:
    ComplexMatrix m_;
};

double frobenius_norm(const ComplexMatrix& m);

/// LU with partial pivoting; ties in pivot magnitude go to the lowest row.
Complex determinant(const ComplexMatrix& m);

/// log|det M| from the same elimination; -infinity for a singular matrix.
double log_abs_determinant(const ComplexMatrix& m);

/// ||M*M - I||.
double unitarity_residual(const ComplexMatrix& m);

struct UnitarySpectrum {
    std::vector<double> angles; ///< sorted ascending, each in [-pi, pi)
    ComplexMatrix vectors;      ///< columns are the matching eigenvectors
};

/// Spectral decomposition U = V diag(e^{i angles}) V*. Throws NumericalFailure
/// when the iteration does not converge or the reconstruction residual
/// exceeds 1e-8.
UnitarySpectrum unitary_spectrum(const UnitaryMatrix& u, int max_iterations = 1000);

std::vector<double> unitary_eigenangles(const UnitaryMatrix& u, int max_iterations = 1000);

/// Haar-distributed n x n unitary: complex Gaussian, QR, phases of diag(R)
/// folded into Q.
UnitaryMatrix haar_sample(std::size_t n, Rng& rng);

} // namespace upb
