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

#include "upb/matrix_core.hpp"

#include "upb/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

namespace upb {

namespace {

using EigenMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

EigenMatrix to_eigen(const ComplexMatrix& m) {
    EigenMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = m(i, j);
    return out;
}

template <typename Derived>
ComplexMatrix from_eigen(const Eigen::MatrixBase<Derived>& m) {
    ComplexMatrix out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out(i, j) = m(i, j);
    return out;
}

void require_square(const ComplexMatrix& m, const char* what) {
    if (!m.is_square())
        throw DimensionError(std::string(what) + ": matrix is " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + ", expected square");
}

// LU with partial pivoting on a copy; `singular` set when a pivot column is all zero.
struct LuResult {
    std::vector<Complex> lu;
    int swaps = 0;
    bool singular = false;
};

LuResult lu_factor(const ComplexMatrix& m) {
    const std::size_t n = m.rows();
    LuResult res;
    res.lu.assign(m.entries().begin(), m.entries().end());
    auto& a = res.lu;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(a[k * n + k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(a[i * n + k]);
            if (v > best) { // strict: ties stay with the lowest row index
                best = v;
                piv = i;
            }
        }
        if (best == 0.0) {
            res.singular = true;
            return res;
        }
        if (piv != k) {
            std::swap_ranges(a.begin() + k * n, a.begin() + (k + 1) * n, a.begin() + piv * n);
            ++res.swaps;
        }
        const Complex pivot = a[k * n + k];
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex f = a[i * n + k] / pivot;
            a[i * n + k] = f;
            for (std::size_t j = k + 1; j < n; ++j)
                a[i * n + j] -= f * a[k * n + j];
        }
    }
    return res;
}

} // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0)
        throw DimensionError("matrix dimensions must be at least 1x1");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows == 0 || cols == 0)
        throw DimensionError("matrix dimensions must be at least 1x1");
    if (data_.size() != rows * cols)
        throw DimensionError("expected " + std::to_string(rows * cols) + " entries, got " +
                             std::to_string(data_.size()));
    for (const auto& z : data_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw ValidationError("matrix entry is not finite");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i)
        m(i, i) = diag[i];
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out(j, i) = std::conj((*this)(i, j));
    return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_)
        throw DimensionError("matrix product: inner dimensions differ");
    ComplexMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Complex aik = a(i, k);
            for (std::size_t j = 0; j < b.cols_; ++j)
                out(i, j) += aik * b(k, j);
        }
    return out;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw DimensionError("matrix sum: shapes differ");
    ComplexMatrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i)
        out.data_[i] += b.data_[i];
    return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw DimensionError("matrix difference: shapes differ");
    ComplexMatrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i)
        out.data_[i] -= b.data_[i];
    return out;
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
    ComplexMatrix out = a;
    for (auto& z : out.data_)
        z *= s;
    return out;
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m, double tolerance) : m_(std::move(m)) {
    require_square(m_, "unitary matrix");
    const double res = unitarity_residual(m_);
    if (!(res <= tolerance))
        throw ValidationError("matrix is not unitary: ||U*U - I|| = " + std::to_string(res));
    const double abs_det = std::exp(log_abs_determinant(m_));
    if (!(std::abs(abs_det - 1.0) <= 1e-6))
        throw ValidationError("matrix is not unitary: |det U| = " + std::to_string(abs_det));
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t n) { return UnitaryMatrix(ComplexMatrix::identity(n)); }

double frobenius_norm(const ComplexMatrix& m) {
    double acc = 0.0;
    for (const auto& z : m.entries())
        acc += std::norm(z);
    return std::sqrt(acc);
}

Complex determinant(const ComplexMatrix& m) {
    require_square(m, "determinant");
    const std::size_t n = m.rows();
    const LuResult f = lu_factor(m);
    if (f.singular)
        return 0.0;
    Complex det = (f.swaps % 2 == 0) ? 1.0 : -1.0;
    for (std::size_t k = 0; k < n; ++k)
        det *= f.lu[k * n + k];
    return det;
}

double log_abs_determinant(const ComplexMatrix& m) {
    require_square(m, "determinant");
    const std::size_t n = m.rows();
    const LuResult f = lu_factor(m);
    if (f.singular)
        return -std::numeric_limits<double>::infinity();
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        acc += std::log(std::abs(f.lu[k * n + k]));
    return acc;
}

double unitarity_residual(const ComplexMatrix& m) {
    require_square(m, "unitarity residual");
    return frobenius_norm(m.adjoint() * m - ComplexMatrix::identity(m.rows()));
}

UnitarySpectrum unitary_spectrum(const UnitaryMatrix& u, int max_iterations) {
    const std::size_t n = u.dim();
    const EigenMatrix a = to_eigen(u.matrix());

    // Complex Schur form of a normal matrix is diagonal up to rounding, so the
    // Schur vectors are eigenvectors.
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur;
    schur.setMaxIterations(max_iterations);
    schur.compute(a);
    if (schur.info() != Eigen::Success)
        throw NumericalFailure("unitary eigenangles: Schur iteration did not converge");

    const Eigen::MatrixXcd& t = schur.matrixT();
    const Eigen::MatrixXcd& v = schur.matrixU();

    std::vector<double> raw(n);
    for (std::size_t j = 0; j < n; ++j) {
        double th = std::arg(t(j, j));
        if (th >= std::numbers::pi)
            th -= 2.0 * std::numbers::pi;
        raw[j] = th;
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return raw[x] < raw[y]; });

    UnitarySpectrum out{std::vector<double>(n), ComplexMatrix(n, n)};
    Eigen::MatrixXcd vs(n, n);
    Eigen::VectorXcd phases(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.angles[j] = raw[order[j]];
        vs.col(j) = v.col(order[j]);
        phases(j) = std::polar(1.0, out.angles[j]);
    }

    const Eigen::MatrixXcd rebuilt = vs * phases.asDiagonal() * vs.adjoint();
    const double residual = (a - rebuilt).norm();
    if (!(residual <= 1e-8))
        throw NumericalFailure("unitary eigenangles: reconstruction residual " + std::to_string(residual));

    out.vectors = from_eigen(vs);
    return out;
}

std::vector<double> unitary_eigenangles(const UnitaryMatrix& u, int max_iterations) {
    return unitary_spectrum(u, max_iterations).angles;
}

UnitaryMatrix haar_sample(std::size_t n, Rng& rng) {
    if (n == 0)
        throw DimensionError("haar_sample: n must be at least 1");
    std::normal_distribution<double> gauss(0.0, std::numbers::sqrt2 / 2.0);
    Eigen::MatrixXcd z(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            z(i, j) = Complex(re, im);
        }

    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd& r = qr.matrixQR();
    for (std::size_t j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        q.col(j) *= (mag > 0.0) ? d / mag : Complex(1.0);
    }
    return UnitaryMatrix(from_eigen(q));
}

} // namespace upb
