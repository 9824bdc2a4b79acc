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

// Run records and their table / CSV / JSON renderings.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace upb::cli {

enum class Format { table, csv, json };

std::optional<Format> parse_format(std::string_view text) noexcept;

/// Empty, text, integer or real.
using Cell = std::variant<std::monostate, std::string, std::uint64_t, double>;

struct RunRecord {
    std::string command;
    std::vector<std::pair<std::string, Cell>> parameters;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::string> notes;
    std::optional<std::string> timestamp;
    std::optional<double> wall_time_s;
};

/// 6 significant digits for the table format, 17 otherwise.
std::string format_number(double v, Format f);

/// Table and JSON carry everything. CSV carries the header and rows only, so
/// that it stays machine-readable; callers route notes elsewhere.
std::string render(const RunRecord& rec, Format f);

std::string utc_timestamp();

} // namespace upb::cli
