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

#include "upb/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace upb::kernels::detail {

void weyl_density_scalar(const HalfAngleBatch& in, std::span<double> out) {
    const double* s = in.sin_half.data();
    const double* c = in.cos_half.data();
    const std::size_t st = in.stride;
    for (std::size_t p = 0; p < in.count; ++p) {
        double prod = 1.0;
        for (std::size_t j = 0; j < in.dim; ++j)
            for (std::size_t k = j + 1; k < in.dim; ++k) {
                const double t = s[j * st + p] * c[k * st + p] - c[j * st + p] * s[k * st + p];
                const double chord2 = 4.0 * (t * t);
                prod = prod * chord2;
            }
        out[p] = prod;
    }
}

void apply_arcsine_jacobian_scalar(const HalfAngleBatch& in, std::span<double> out) {
    const double* c = in.cos_half.data();
    const std::size_t st = in.stride;
    for (std::size_t p = 0; p < in.count; ++p) {
        double v = out[p];
        for (std::size_t j = 0; j < in.dim; ++j)
            v = v * (2.0 / c[j * st + p]);
        out[p] = v;
    }
}

void clip_and_complement_scalar(std::span<double> s, std::span<double> c, double limit) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double x = std::min(std::max(s[i], -limit), limit);
        s[i] = x;
        c[i] = std::sqrt(1.0 - x * x);
    }
}

void sum_of_squares_scalar(std::size_t dim, std::size_t count, std::size_t stride,
                           std::span<const double> x, std::span<double> out) {
    for (std::size_t p = 0; p < count; ++p) {
        double acc = 0.0;
        for (std::size_t j = 0; j < dim; ++j) {
            const double v = x[j * stride + p];
            acc = acc + v * v;
        }
        out[p] = acc;
    }
}

} // namespace upb::kernels::detail
