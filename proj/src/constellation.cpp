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

#include "upb/constellation.hpp"

#include "upb/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

namespace upb {

namespace {

constexpr double kDuplicateTol = 1e-12;

double max_entry_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    double worst = 0.0;
    const auto ea = a.entries();
    const auto eb = b.entries();
    for (std::size_t i = 0; i < ea.size(); ++i)
        worst = std::max(worst, std::abs(ea[i] - eb[i]));
    return worst;
}

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Pairwise score where larger is better; log|det| for the product keeps
// near-singular differences from underflowing.
double pair_metric(const UnitaryMatrix& a, const UnitaryMatrix& b, Objective o) {
    const ComplexMatrix diff = a.matrix() - b.matrix();
    if (o == Objective::sum)
        return frobenius_norm(diff);
    return log_abs_determinant(diff);
}

double finish_score(double best_pair, std::size_t n, Objective o) {
    const double nn = static_cast<double>(n);
    if (o == Objective::sum)
        return best_pair / (2.0 * std::sqrt(nn));
    if (best_pair == -std::numeric_limits<double>::infinity())
        return 0.0;
    return 0.5 * std::exp(best_pair / nn);
}

PairScore score_of(const std::vector<UnitaryMatrix>& members, Objective o) {
    PairScore best{std::numeric_limits<double>::infinity(), 0, 1};
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            const double v = pair_metric(members[i], members[j], o);
            if (v < best.value)
                best = {v, i, j};
        }
    best.value = finish_score(best.value, members.front().dim(), o);
    return best;
}

} // namespace

Constellation::Constellation(std::vector<UnitaryMatrix> members, std::string label)
    : n_(members.empty() ? 0 : members.front().dim()), members_(std::move(members)), label_(std::move(label)) {
    if (members_.size() < 2)
        throw ValidationError("a constellation needs at least two members");
    for (std::size_t i = 0; i < members_.size(); ++i)
        if (members_[i].dim() != n_)
            throw DimensionError("member " + std::to_string(i) + " is " + std::to_string(members_[i].dim()) + "x" +
                                 std::to_string(members_[i].dim()) + ", expected " + std::to_string(n_) + "x" +
                                 std::to_string(n_));
    for (std::size_t i = 0; i < members_.size(); ++i)
        for (std::size_t j = i + 1; j < members_.size(); ++j)
            if (max_entry_diff(members_[i].matrix(), members_[j].matrix()) <= kDuplicateTol)
                throw ValidationError("members " + std::to_string(i) + " and " + std::to_string(j) + " coincide", j);
}

PairScore diversity_sum(const Constellation& v) { return score_of(v.members(), Objective::sum); }

PairScore diversity_product(const Constellation& v) { return score_of(v.members(), Objective::product); }

double chordal_distance(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    if (a.dim() != b.dim())
        throw DimensionError("chordal distance: dimensions differ");
    return frobenius_norm(a.matrix() - b.matrix());
}

double riemannian_distance(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    if (a.dim() != b.dim())
        throw DimensionError("riemannian distance: dimensions differ");
    // A*B is unitary to rounding; validate loosely since the inputs already were.
    const UnitaryMatrix rel(a.matrix().adjoint() * b.matrix(), 1e-8);
    double acc = 0.0;
    for (double t : unitary_eigenangles(rel))
        acc += t * t;
    return std::sqrt(acc);
}

double chordal_packing_radius(const Constellation& v) {
    const double nn = static_cast<double>(v.dim());
    const double d = 2.0 * std::sqrt(nn) * diversity_sum(v).value;
    const double ratio = std::min(1.0, d * d / (4.0 * nn));
    // 1 - sqrt(1 - x) written as x / (1 + sqrt(1 - x)) to keep small d accurate.
    const double r2 = 2.0 * nn * ratio / (1.0 + std::sqrt(1.0 - ratio));
    return std::sqrt(r2);
}

std::string_view to_string(Objective o) noexcept { return o == Objective::sum ? "sum" : "product"; }

SearchResult random_search(std::size_t n, std::size_t m, std::size_t trials, std::uint64_t seed, Objective objective) {
    if (n < 1)
        throw RangeError("n must be ≥ 1");
    if (m < 2)
        throw RangeError("m must be ≥ 2");
    if (trials < 1)
        throw RangeError("trials must be ≥ 1");

    auto pair_score = [&](const UnitaryMatrix& a, const UnitaryMatrix& b) {
        return finish_score(pair_metric(a, b, objective), n, objective);
    };
    auto repulsion = [](double s) { return s > 0.0 ? 1.0 / (s * s) : std::numeric_limits<double>::infinity(); };

    Rng rng(seed);
    std::vector<UnitaryMatrix> current;
    current.reserve(m);
    for (std::size_t i = 0; i < m; ++i)
        current.push_back(haar_sample(n, rng));

    std::vector<double> score(m * m, 0.0);
    std::vector<double> min_without(m);
    double cur_min = 0.0;
    double potential = 0.0;
    auto refresh = [&] {
        cur_min = std::numeric_limits<double>::infinity();
        potential = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                const double v = pair_score(current[i], current[j]);
                score[i * m + j] = score[j * m + i] = v;
                cur_min = std::min(cur_min, v);
                potential += repulsion(v);
            }
        for (std::size_t k = 0; k < m; ++k) {
            double lo = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = i + 1; j < m; ++j)
                    if (i != k && j != k)
                        lo = std::min(lo, score[i * m + j]);
            min_without[k] = lo;
        }
    };
    refresh();

    // Each trial offers one Haar sample as a replacement for every member and
    // takes the best swap: a larger minimum, or the same minimum with less
    // pairwise repulsion so that crowded members can drift apart.
    std::vector<double> cand(m);
    for (std::size_t t = 0; t < trials; ++t) {
        const UnitaryMatrix candidate = haar_sample(n, rng);
        for (std::size_t i = 0; i < m; ++i)
            cand[i] = pair_score(candidate, current[i]);
        std::optional<std::size_t> best;
        double best_min = cur_min;
        double best_potential = potential;
        for (std::size_t k = 0; k < m; ++k) {
            double new_min = min_without[k];
            double new_potential = potential;
            for (std::size_t i = 0; i < m; ++i) {
                if (i == k)
                    continue;
                new_min = std::min(new_min, cand[i]);
                new_potential += repulsion(cand[i]) - repulsion(score[k * m + i]);
            }
            if (new_min > best_min || (new_min == best_min && new_potential < best_potential)) {
                best = k;
                best_min = new_min;
                best_potential = new_potential;
            }
        }
        if (best) {
            current[*best] = candidate;
            refresh();
        }
    }
    const PairScore final_score = score_of(current, objective);
    std::ostringstream label;
    label << "random-search n=" << n << " m=" << m << " trials=" << trials << " seed=" << seed
          << " objective=" << to_string(objective);
    return SearchResult{Constellation(std::move(current), label.str()), final_score.value};
}

std::string serialize_constellation(const Constellation& v) {
    const std::size_t n = v.dim();
    std::ostringstream os;
    os << "{\n  \"n\": " << n << ",\n  \"label\": " << nlohmann::json(v.label()).dump() << ",\n  \"matrices\": [\n";
    for (std::size_t k = 0; k < v.size(); ++k) {
        os << "    [\n";
        for (std::size_t i = 0; i < n; ++i) {
            os << "      [";
            for (std::size_t j = 0; j < n; ++j) {
                const Complex z = v[k](i, j);
                os << '[' << fmt17(z.real()) << ", " << fmt17(z.imag()) << ']';
                if (j + 1 < n)
                    os << ", ";
            }
            os << (i + 1 < n ? "],\n" : "]\n");
        }
        os << (k + 1 < v.size() ? "    ],\n" : "    ]\n");
    }
    os << "  ]\n}\n";
    return os.str();
}

Constellation parse_constellation(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("constellation file: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("matrices"))
        throw ParseError("constellation file: expected an object with \"n\" and \"matrices\"");
    if (!doc["n"].is_number_integer() || doc["n"].get<long long>() < 1)
        throw ParseError("constellation file: \"n\" must be a positive integer");
    const auto n = static_cast<std::size_t>(doc["n"].get<long long>());
    std::string label;
    if (doc.contains("label")) {
        if (!doc["label"].is_string())
            throw ParseError("constellation file: \"label\" must be a string");
        label = doc["label"].get<std::string>();
    }
    const auto& mats = doc["matrices"];
    if (!mats.is_array())
        throw ParseError("constellation file: \"matrices\" must be an array");

    std::vector<UnitaryMatrix> members;
    members.reserve(mats.size());
    for (std::size_t k = 0; k < mats.size(); ++k) {
        const auto& rows = mats[k];
        if (!rows.is_array())
            throw ParseError("constellation file: matrix " + std::to_string(k) + " is not an array");
        if (rows.size() != n)
            throw DimensionError("matrix " + std::to_string(k) + " has " + std::to_string(rows.size()) +
                                 " rows, expected n = " + std::to_string(n));
        std::vector<Complex> entries;
        entries.reserve(n * n);
        for (const auto& row : rows) {
            if (!row.is_array())
                throw ParseError("constellation file: matrix " + std::to_string(k) + " has a non-array row");
            if (row.size() != n)
                throw DimensionError("matrix " + std::to_string(k) + " has a row of length " +
                                     std::to_string(row.size()) + ", expected n = " + std::to_string(n));
            for (const auto& z : row) {
                if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
                    throw ParseError("constellation file: matrix " + std::to_string(k) +
                                     " has an entry that is not a [re, im] pair");
                entries.emplace_back(z[0].get<double>(), z[1].get<double>());
            }
        }
        try {
            members.emplace_back(ComplexMatrix(n, n, std::move(entries)));
        } catch (const ValidationError& e) {
            throw ValidationError("matrix " + std::to_string(k) + ": " + e.what(), k);
        }
    }
    return Constellation(std::move(members), std::move(label));
}

void save_constellation(const Constellation& v, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error("cannot open " + path.string() + " for writing");
    out << serialize_constellation(v);
    if (!out)
        throw Error("failed writing " + path.string());
}

Constellation load_constellation(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_constellation(buf.str());
}

} // namespace upb
