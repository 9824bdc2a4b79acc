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

#include "oracles.hpp"

#include "upb/errors.hpp"
#include "upb/matrix_core.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace upb;

namespace {

double max_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
    return worst;
}

} // namespace

TEST_CASE("construction rejects bad shapes and values") {
    CHECK_THROWS_AS(ComplexMatrix(2, 2, std::vector<Complex>(3)), DimensionError);
    std::vector<Complex> bad(4, Complex(1.0, 0.0));
    bad[2] = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
    CHECK_THROWS_AS(ComplexMatrix(2, 2, bad), ValidationError);
    CHECK_THROWS_AS(UnitaryMatrix(ComplexMatrix(2, 3)), DimensionError);
    CHECK_THROWS_AS(UnitaryMatrix(2.0 * ComplexMatrix::identity(2)), ValidationError);
}

TEST_CASE("arithmetic and adjoint") {
    std::mt19937_64 rng(7);
    const ComplexMatrix a = oracle::random_matrix(3, 3, rng);
    const ComplexMatrix b = oracle::random_matrix(3, 3, rng);
    CHECK(max_diff(a * ComplexMatrix::identity(3), a) == 0.0);
    CHECK(max_diff((a + b) - b, a) < 1e-14);
    CHECK(max_diff((a * b).adjoint(), b.adjoint() * a.adjoint()) < 1e-12);
    CHECK(a.adjoint()(0, 1) == std::conj(a(1, 0)));
}

TEST_CASE("frobenius norm matches the entrywise definition") {
    std::mt19937_64 rng(11);
    for (std::size_t n = 1; n <= 6; ++n) {
        const ComplexMatrix a = oracle::random_matrix(n, n + 1, rng);
        CHECK(frobenius_norm(a) == doctest::Approx(oracle::entrywise_norm(a)).epsilon(1e-14));
    }
    CHECK(frobenius_norm(ComplexMatrix::identity(4)) == doctest::Approx(2.0));
}

TEST_CASE("determinant agrees with cofactor expansion") {
    std::mt19937_64 rng(13);
    for (std::size_t n = 1; n <= 6; ++n) {
        for (int t = 0; t < 5; ++t) {
            const ComplexMatrix a = oracle::random_matrix(n, n, rng);
            const Complex want = oracle::cofactor_determinant(a);
            CHECK(std::abs(determinant(a) - want) <= 1e-10 * std::max(1.0, std::abs(want)));
            CHECK(log_abs_determinant(a) == doctest::Approx(std::log(std::abs(want))).epsilon(1e-10));
        }
    }
}

TEST_CASE("determinant of permutations, ties and singular input") {
    // Swap of rows 0 and 1: every candidate pivot has magnitude 1.
    ComplexMatrix p(3, 3);
    p(0, 1) = p(1, 0) = p(2, 2) = 1.0;
    CHECK(determinant(p) == Complex(-1.0, 0.0));
    ComplexMatrix ties(2, 2, {1.0, 2.0, 1.0, 3.0});
    CHECK(determinant(ties) == Complex(1.0, 0.0));

    ComplexMatrix s(2, 2, {1.0, 2.0, 2.0, 4.0});
    CHECK(determinant(s) == Complex(0.0, 0.0));
    CHECK(log_abs_determinant(s) == -std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(determinant(ComplexMatrix(2, 3)), DimensionError);
}

TEST_CASE("haar samples are unitary, seeded and spread") {
    Rng a(42), b(42);
    for (std::size_t n = 1; n <= 6; ++n) {
        const UnitaryMatrix u = haar_sample(n, a);
        const UnitaryMatrix v = haar_sample(n, b);
        CHECK(unitarity_residual(u.matrix()) < 1e-12);
        CHECK(std::abs(std::abs(determinant(u.matrix())) - 1.0) < 1e-12);
        CHECK(max_diff(u.matrix(), v.matrix()) == 0.0);
    }
    // |U_00|^2 is Beta(1, n-1): mean 1/n, variance (n-1)/(n^2 (n+1)).
    Rng rng(5);
    const std::size_t n = 3;
    const int samples = 4000;
    double acc = 0.0;
    for (int i = 0; i < samples; ++i)
        acc += std::norm(haar_sample(n, rng)(0, 0));
    const double mean = acc / samples;
    const double sd = std::sqrt(2.0 / (9.0 * 4.0) / samples);
    CHECK(std::abs(mean - 1.0 / 3.0) < 4.0 * sd);
}

TEST_CASE("eigenangles of diagonal and conjugated unitaries") {
    const std::vector<Complex> diag = {std::polar(1.0, 2.5), std::polar(1.0, -0.3), std::polar(1.0, 1.0)};
    const UnitaryMatrix d(ComplexMatrix::diagonal(diag));
    auto angles = unitary_eigenangles(d);
    REQUIRE(angles.size() == 3);
    CHECK(angles[0] == doctest::Approx(-0.3).epsilon(1e-12));
    CHECK(angles[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(angles[2] == doctest::Approx(2.5).epsilon(1e-12));

    Rng rng(9);
    const UnitaryMatrix v = haar_sample(3, rng);
    const UnitaryMatrix conj(v.matrix() * d.matrix() * v.matrix().adjoint());
    const auto spec = unitary_spectrum(conj);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(spec.angles[i] == doctest::Approx(angles[i]).epsilon(1e-10));

    // e^{i pi} lands on the closed end of [-pi, pi).
    const UnitaryMatrix minus(-1.0 * ComplexMatrix::identity(2));
    for (double t : unitary_eigenangles(minus))
        CHECK(t == doctest::Approx(-std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("spectral decomposition reconstructs the matrix") {
    Rng rng(21);
    for (std::size_t n = 1; n <= 5; ++n) {
        const UnitaryMatrix u = haar_sample(n, rng);
        const auto spec = unitary_spectrum(u);
        std::vector<Complex> phases;
        for (double t : spec.angles) {
            CHECK(t >= -std::numbers::pi);
            CHECK(t < std::numbers::pi);
            phases.push_back(std::polar(1.0, t));
        }
        const ComplexMatrix back = spec.vectors * ComplexMatrix::diagonal(phases) * spec.vectors.adjoint();
        CHECK(max_diff(back, u.matrix()) < 1e-10);
    }
}
