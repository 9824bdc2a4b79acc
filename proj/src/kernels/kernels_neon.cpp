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

#if defined(__aarch64__) && defined(__ARM_NEON)

#include <arm_neon.h>

namespace upb::kernels::detail {

// Two points per float64x2_t; tails go through the scalar reference.

void weyl_density_neon(const HalfAngleBatch& in, std::span<double> out) {
    const double* s = in.sin_half.data();
    const double* c = in.cos_half.data();
    const std::size_t st = in.stride;
    const std::size_t vec_end = in.count - in.count % 2;
    const float64x2_t four = vdupq_n_f64(4.0);

    for (std::size_t p = 0; p < vec_end; p += 2) {
        float64x2_t prod = vdupq_n_f64(1.0);
        for (std::size_t j = 0; j < in.dim; ++j) {
            const float64x2_t sj = vld1q_f64(s + j * st + p);
            const float64x2_t cj = vld1q_f64(c + j * st + p);
            for (std::size_t k = j + 1; k < in.dim; ++k) {
                const float64x2_t sk = vld1q_f64(s + k * st + p);
                const float64x2_t ck = vld1q_f64(c + k * st + p);
                const float64x2_t t = vsubq_f64(vmulq_f64(sj, ck), vmulq_f64(cj, sk));
                prod = vmulq_f64(prod, vmulq_f64(four, vmulq_f64(t, t)));
            }
        }
        vst1q_f64(out.data() + p, prod);
    }
    if (vec_end < in.count) {
        HalfAngleBatch tail = in;
        tail.count = in.count - vec_end;
        tail.sin_half = in.sin_half.subspan(vec_end);
        tail.cos_half = in.cos_half.subspan(vec_end);
        weyl_density_scalar(tail, out.subspan(vec_end));
    }
}

void apply_arcsine_jacobian_neon(const HalfAngleBatch& in, std::span<double> out) {
    const double* c = in.cos_half.data();
    const std::size_t st = in.stride;
    const std::size_t vec_end = in.count - in.count % 2;
    const float64x2_t two = vdupq_n_f64(2.0);
    for (std::size_t p = 0; p < vec_end; p += 2) {
        float64x2_t v = vld1q_f64(out.data() + p);
        for (std::size_t j = 0; j < in.dim; ++j)
            v = vmulq_f64(v, vdivq_f64(two, vld1q_f64(c + j * st + p)));
        vst1q_f64(out.data() + p, v);
    }
    if (vec_end < in.count) {
        HalfAngleBatch tail = in;
        tail.count = in.count - vec_end;
        tail.sin_half = in.sin_half.subspan(vec_end);
        tail.cos_half = in.cos_half.subspan(vec_end);
        apply_arcsine_jacobian_scalar(tail, out.subspan(vec_end));
    }
}

void clip_and_complement_neon(std::span<double> s, std::span<double> c, double limit) {
    const std::size_t n = s.size();
    const std::size_t vec_end = n - n % 2;
    const float64x2_t hi = vdupq_n_f64(limit);
    const float64x2_t lo = vdupq_n_f64(-limit);
    const float64x2_t one = vdupq_n_f64(1.0);
    for (std::size_t i = 0; i < vec_end; i += 2) {
        const float64x2_t x = vminq_f64(vmaxq_f64(vld1q_f64(s.data() + i), lo), hi);
        vst1q_f64(s.data() + i, x);
        vst1q_f64(c.data() + i, vsqrtq_f64(vsubq_f64(one, vmulq_f64(x, x))));
    }
    if (vec_end < n)
        clip_and_complement_scalar(s.subspan(vec_end), c.subspan(vec_end), limit);
}

void sum_of_squares_neon(std::size_t dim, std::size_t count, std::size_t stride,
                         std::span<const double> x, std::span<double> out) {
    const std::size_t vec_end = count - count % 2;
    for (std::size_t p = 0; p < vec_end; p += 2) {
        float64x2_t acc = vdupq_n_f64(0.0);
        for (std::size_t j = 0; j < dim; ++j) {
            const float64x2_t v = vld1q_f64(x.data() + j * stride + p);
            acc = vaddq_f64(acc, vmulq_f64(v, v));
        }
        vst1q_f64(out.data() + p, acc);
    }
    if (vec_end < count)
        sum_of_squares_scalar(dim, count - vec_end, stride, x.subspan(vec_end), out.subspan(vec_end));
}

} // namespace upb::kernels::detail

#endif
