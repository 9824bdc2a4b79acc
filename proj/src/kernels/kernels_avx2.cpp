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

#include <immintrin.h>

namespace upb::kernels::detail {

// Four points per lane group; the tail falls back to the scalar reference so
// both paths agree bit for bit.

void weyl_density_avx2(const HalfAngleBatch& in, std::span<double> out) {
    const double* s = in.sin_half.data();
    const double* c = in.cos_half.data();
    const std::size_t st = in.stride;
    const std::size_t vec_end = in.count - in.count % 4;
    const __m256d four = _mm256_set1_pd(4.0);

    for (std::size_t p = 0; p < vec_end; p += 4) {
        __m256d prod = _mm256_set1_pd(1.0);
        for (std::size_t j = 0; j < in.dim; ++j) {
            const __m256d sj = _mm256_loadu_pd(s + j * st + p);
            const __m256d cj = _mm256_loadu_pd(c + j * st + p);
            for (std::size_t k = j + 1; k < in.dim; ++k) {
                const __m256d sk = _mm256_loadu_pd(s + k * st + p);
                const __m256d ck = _mm256_loadu_pd(c + k * st + p);
                const __m256d t = _mm256_sub_pd(_mm256_mul_pd(sj, ck), _mm256_mul_pd(cj, sk));
                const __m256d chord2 = _mm256_mul_pd(four, _mm256_mul_pd(t, t));
                prod = _mm256_mul_pd(prod, chord2);
            }
        }
        _mm256_storeu_pd(out.data() + p, prod);
    }
    if (vec_end < in.count) {
        HalfAngleBatch tail = in;
        tail.count = in.count - vec_end;
        tail.sin_half = in.sin_half.subspan(vec_end);
        tail.cos_half = in.cos_half.subspan(vec_end);
        weyl_density_scalar(tail, out.subspan(vec_end));
    }
}

void apply_arcsine_jacobian_avx2(const HalfAngleBatch& in, std::span<double> out) {
    const double* c = in.cos_half.data();
    const std::size_t st = in.stride;
    const std::size_t vec_end = in.count - in.count % 4;
    const __m256d two = _mm256_set1_pd(2.0);

    for (std::size_t p = 0; p < vec_end; p += 4) {
        __m256d v = _mm256_loadu_pd(out.data() + p);
        for (std::size_t j = 0; j < in.dim; ++j)
            v = _mm256_mul_pd(v, _mm256_div_pd(two, _mm256_loadu_pd(c + j * st + p)));
        _mm256_storeu_pd(out.data() + p, v);
    }
    if (vec_end < in.count) {
        HalfAngleBatch tail = in;
        tail.count = in.count - vec_end;
        tail.sin_half = in.sin_half.subspan(vec_end);
        tail.cos_half = in.cos_half.subspan(vec_end);
        apply_arcsine_jacobian_scalar(tail, out.subspan(vec_end));
    }
}

void clip_and_complement_avx2(std::span<double> s, std::span<double> c, double limit) {
    const std::size_t n = s.size();
    const std::size_t vec_end = n - n % 4;
    const __m256d hi = _mm256_set1_pd(limit);
    const __m256d lo = _mm256_set1_pd(-limit);
    const __m256d one = _mm256_set1_pd(1.0);
    for (std::size_t i = 0; i < vec_end; i += 4) {
        const __m256d x = _mm256_min_pd(_mm256_max_pd(_mm256_loadu_pd(s.data() + i), lo), hi);
        _mm256_storeu_pd(s.data() + i, x);
        _mm256_storeu_pd(c.data() + i, _mm256_sqrt_pd(_mm256_sub_pd(one, _mm256_mul_pd(x, x))));
    }
    if (vec_end < n)
        clip_and_complement_scalar(s.subspan(vec_end), c.subspan(vec_end), limit);
}

void sum_of_squares_avx2(std::size_t dim, std::size_t count, std::size_t stride,
                         std::span<const double> x, std::span<double> out) {
    const std::size_t vec_end = count - count % 4;
    for (std::size_t p = 0; p < vec_end; p += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t j = 0; j < dim; ++j) {
            const __m256d v = _mm256_loadu_pd(x.data() + j * stride + p);
            acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
        }
        _mm256_storeu_pd(out.data() + p, acc);
    }
    if (vec_end < count)
        sum_of_squares_scalar(dim, count - vec_end, stride, x.subspan(vec_end), out.subspan(vec_end));
}

} // namespace upb::kernels::detail
