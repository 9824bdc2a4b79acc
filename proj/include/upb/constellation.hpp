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

#include "upb/matrix_core.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace upb {

/// A unitary space-time code: m >= 2 distinct n x n unitaries.
class Constellation {
  public:
    /// Throws ValidationError (with the member index) on fewer than two
    /// members, mixed dimensions or entrywise duplicates (max diff <= 1e-12).
    explicit Constellation(std::vector<UnitaryMatrix> members, std::string label = {});

    std::size_t dim() const noexcept { return n_; }
    std::size_t size() const noexcept { return members_.size(); }
    const std::vector<UnitaryMatrix>& members() const noexcept { return members_; }
    const UnitaryMatrix& operator[](std::size_t i) const { return members_[i]; }
    const std::string& label() const noexcept { return label_; }

  private:
    std::size_t n_;
    std::vector<UnitaryMatrix> members_;
    std::string label_;
};

/// Score of a constellation together with the pair attaining it.
struct PairScore {
    double value = 0.0;
    std::size_t first = 0;
    std::size_t second = 0;
};

/// (1 / (2 sqrt n)) min ||A - B||.
PairScore diversity_sum(const Constellation& v);

/// (1/2) min |det(A - B)|^(1/n), evaluated in the log domain. Zero when some
/// difference is singular.
PairScore diversity_product(const Constellation& v);

/// sqrt(sum theta_j^2) over the eigenangles of A* B.
double riemannian_distance(const UnitaryMatrix& a, const UnitaryMatrix& b);

/// Chordal distance ||A - B||.
double chordal_distance(const UnitaryMatrix& a, const UnitaryMatrix& b);

/// Largest radius r of pairwise non-overlapping balls on the sphere of radius
/// sqrt(n): the smaller root of 2 sqrt(r^2 - r^4/(4n)) = min ||A - B||.
double chordal_packing_radius(const Constellation& v);

enum class Objective { sum, product };

std::string_view to_string(Objective o) noexcept;

struct SearchResult {
    Constellation best;
    double score;
};

/// Haar-sampled random search. Starts from m Haar samples; each trial draws
/// one more Haar sample and swaps it in for the member whose replacement most
/// raises the objective, breaking ties by lower pairwise repulsion
/// (sum of 1/score^2). Deterministic given the seed.
SearchResult random_search(std::size_t n, std::size_t m, std::size_t trials, std::uint64_t seed, Objective objective);

/// Text form: {"n": .., "label": .., "matrices": [[[re, im], ...], ...]} with
/// 17 significant digits and fixed key order.
std::string serialize_constellation(const Constellation& v);
Constellation parse_constellation(std::string_view text);

void save_constellation(const Constellation& v, const std::filesystem::path& path);
Constellation load_constellation(const std::filesystem::path& path);

} // namespace upb
