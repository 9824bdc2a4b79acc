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

#include "upb/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace upb;

TEST_CASE("gauss-legendre on [0, 1] is exact to degree 2n - 1") {
    for (std::size_t count : {1, 2, 3, 5, 8, 20, 64}) {
        const GaussRule g = gauss_legendre_unit(count);
        REQUIRE(g.nodes.size() == count);
        for (std::size_t i = 1; i < count; ++i)
            CHECK(g.nodes[i - 1] < g.nodes[i]);
        for (std::size_t deg = 0; deg <= 2 * count - 1; ++deg) {
            double acc = 0.0;
            for (std::size_t i = 0; i < count; ++i)
                acc += g.weights[i] * std::pow(g.nodes[i], static_cast<double>(deg));
            CHECK(acc == doctest::Approx(1.0 / static_cast<double>(deg + 1)).epsilon(1e-13));
        }
    }
}

TEST_CASE("composite rule integrates smooth functions") {
    const GaussRule g = composite_gauss_legendre(0.0, std::numbers::pi, 4, 10);
    CHECK(g.nodes.size() == 40);
    double acc = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
        acc += g.weights[i] * std::sin(g.nodes[i]);
    CHECK(acc == doctest::Approx(2.0).epsilon(1e-14));
}
