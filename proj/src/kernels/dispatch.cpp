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

#include <cstdlib>
#include <string_view>

namespace upb::kernels {

std::string_view to_string(Isa isa) noexcept {
    switch (isa) {
    case Isa::scalar:
        return "scalar";
    case Isa::avx2:
        return "avx2";
    case Isa::neon:
        return "neon";
    }
    return "unknown";
}

const KernelTable& scalar_table() noexcept {
    static const KernelTable table{Isa::scalar, detail::weyl_density_scalar,
                                   detail::apply_arcsine_jacobian_scalar, detail::clip_and_complement_scalar,
                                   detail::sum_of_squares_scalar};
    return table;
}

const KernelTable* avx2_table() noexcept {
#if defined(UPB_HAVE_AVX2)
    static const KernelTable table{Isa::avx2, detail::weyl_density_avx2, detail::apply_arcsine_jacobian_avx2,
                                   detail::clip_and_complement_avx2, detail::sum_of_squares_avx2};
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? &table : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable* neon_table() noexcept {
#if defined(__aarch64__) && defined(__ARM_NEON)
    static const KernelTable table{Isa::neon, detail::weyl_density_neon, detail::apply_arcsine_jacobian_neon,
                                   detail::clip_and_complement_neon, detail::sum_of_squares_neon};
    return &table;
#else
    return nullptr;
#endif
}

const KernelTable& active() noexcept {
    static const KernelTable* chosen = [] {
        const char* forced = std::getenv("UPB_ISA");
        if (forced != nullptr && std::string_view(forced) == "scalar")
            return &scalar_table();
        if (const auto* t = avx2_table())
            return t;
        if (const auto* t = neon_table())
            return t;
        return &scalar_table();
    }();
    return *chosen;
}

} // namespace upb::kernels
