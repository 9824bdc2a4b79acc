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

#include <cstddef>
#include <vector>

namespace upb {

/// Gauss-Legendre rule mapped to [0, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// `count` point rule on [0, 1], nodes ascending. Exact for polynomials of
/// degree 2*count - 1.
GaussRule gauss_legendre_unit(std::size_t count);

/// Composite rule over [lo, hi] split into `panels` equal pieces.
GaussRule composite_gauss_legendre(double lo, double hi, std::size_t panels, std::size_t nodes_per_panel);

} // namespace upb
