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

#include "upb/errors.hpp"

#include <cmath>
#include <numbers>

namespace upb {

GaussRule gauss_legendre_unit(std::size_t count) {
    if (count == 0)
        throw ConfigError("Gauss-Legendre rule needs at least one node");
    GaussRule rule{std::vector<double>(count), std::vector<double>(count)};
    const std::size_t half = (count + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        // Newton on P_count starting from the Chebyshev-like guess.
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(count) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= count; ++k) {
                const double kk = static_cast<double>(k);
                const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(count) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        // Recompute the derivative at the converged node for the weight.
        double p0 = 1.0;
        double p1 = x;
        for (std::size_t k = 2; k <= count; ++k) {
            const double kk = static_cast<double>(k);
            const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
            p0 = p1;
            p1 = p2;
        }
        dp = static_cast<double>(count) * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);

        // x is the i-th largest root on [-1, 1].
        rule.nodes[count - 1 - i] = 0.5 * (1.0 + x);
        rule.nodes[i] = 0.5 * (1.0 - x);
        rule.weights[count - 1 - i] = 0.5 * w;
        rule.weights[i] = 0.5 * w;
    }
    return rule;
}

GaussRule composite_gauss_legendre(double lo, double hi, std::size_t panels, std::size_t nodes_per_panel) {
    if (panels == 0)
        throw ConfigError("composite rule needs at least one panel");
    const GaussRule base = gauss_legendre_unit(nodes_per_panel);
    GaussRule out;
    out.nodes.reserve(panels * nodes_per_panel);
    out.weights.reserve(panels * nodes_per_panel);
    const double h = (hi - lo) / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
        const double a = lo + h * static_cast<double>(p);
        for (std::size_t i = 0; i < nodes_per_panel; ++i) {
            out.nodes.push_back(a + h * base.nodes[i]);
            out.weights.push_back(h * base.weights[i]);
        }
    }
    return out;
}

} // namespace upb
