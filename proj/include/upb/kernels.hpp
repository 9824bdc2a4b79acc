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

// Batched arithmetic kernels behind the Weyl-density integrators.
//
// Point batches are stored coordinate-major (structure of arrays): coordinate j
// of point p lives at `x[j * stride + p]`. Every variant performs the same IEEE
// operations in the same order per point, so the scalar reference and the SIMD
// variants produce bit-identical output. Reductions stay in the callers.

#include <cstddef>
#include <span>
#include <string_view>

namespace upb::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view to_string(Isa isa) noexcept;

/// Half-angle sines/cosines of a batch of `count` points in dimension `dim`.
struct HalfAngleBatch {
    std::size_t dim;
    std::size_t count;
    std::size_t stride;
    std::span<const double> sin_half; ///< sin(theta_j / 2)
    std::span<const double> cos_half; ///< cos(theta_j / 2)
};

struct KernelTable {
    Isa isa;

    /// out[p] = prod_{j<k} 4 (s_j c_k - c_j s_k)^2, i.e. prod |e^{i th_j} - e^{i th_k}|^2.
    void (*weyl_density)(const HalfAngleBatch& in, std::span<double> out);

    /// out[p] *= prod_j 2 / c_j. Jacobian of theta_j = 2 asin(x_j).
    void (*apply_arcsine_jacobian)(const HalfAngleBatch& in, std::span<double> out);

    /// c[i] = sqrt(1 - s[i]^2) after clipping s[i] into [-limit, limit].
    void (*clip_and_complement)(std::span<double> s, std::span<double> c, double limit);

    /// out[p] = sum_j x_j[p]^2.
    void (*sum_of_squares)(std::size_t dim, std::size_t count, std::size_t stride,
                           std::span<const double> x, std::span<double> out);
};

const KernelTable& scalar_table() noexcept;

/// Null when the variant was not compiled in or the CPU lacks the extension.
const KernelTable* avx2_table() noexcept;
const KernelTable* neon_table() noexcept;

/// Best table for this CPU. `UPB_ISA=scalar` in the environment forces the
/// scalar reference path.
const KernelTable& active() noexcept;

namespace detail {
// Per-ISA entry points, one translation unit each.
void weyl_density_scalar(const HalfAngleBatch& in, std::span<double> out);
void apply_arcsine_jacobian_scalar(const HalfAngleBatch& in, std::span<double> out);
void clip_and_complement_scalar(std::span<double> s, std::span<double> c, double limit);
void sum_of_squares_scalar(std::size_t dim, std::size_t count, std::size_t stride,
                           std::span<const double> x, std::span<double> out);

void weyl_density_avx2(const HalfAngleBatch& in, std::span<double> out);
void apply_arcsine_jacobian_avx2(const HalfAngleBatch& in, std::span<double> out);
void clip_and_complement_avx2(std::span<double> s, std::span<double> c, double limit);
void sum_of_squares_avx2(std::size_t dim, std::size_t count, std::size_t stride,
                         std::span<const double> x, std::span<double> out);

void weyl_density_neon(const HalfAngleBatch& in, std::span<double> out);
void apply_arcsine_jacobian_neon(const HalfAngleBatch& in, std::span<double> out);
void clip_and_complement_neon(std::span<double> s, std::span<double> c, double limit);
void sum_of_squares_neon(std::size_t dim, std::size_t count, std::size_t stride,
                         std::span<const double> x, std::span<double> out);
} // namespace detail

} // namespace upb::kernels
