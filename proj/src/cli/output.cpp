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

#include "cli/output.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <sstream>

namespace upb::cli {

namespace {

std::string cell_text(const Cell& c, Format f) {
    return std::visit(
        [f](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>)
                return "";
            else if constexpr (std::is_same_v<T, std::string>)
                return v;
            else if constexpr (std::is_same_v<T, std::uint64_t>)
                return std::to_string(v);
            else
                return format_number(v, f);
        },
        c);
}

std::string json_cell(const Cell& c) {
    if (std::holds_alternative<std::monostate>(c))
        return "null";
    if (const auto* s = std::get_if<std::string>(&c))
        return nlohmann::json(*s).dump();
    if (const auto* d = std::get_if<double>(&c); d && !std::isfinite(*d))
        return "null";
    return cell_text(c, Format::json);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"')
            out += '"';
        out += ch;
    }
    return out + "\"";
}

std::string render_table(const RunRecord& rec) {
    std::ostringstream os;
    os << rec.command;
    for (const auto& [k, v] : rec.parameters)
        os << ' ' << k << '=' << cell_text(v, Format::table);
    os << '\n';

    std::vector<std::size_t> width(rec.columns.size());
    std::vector<std::vector<std::string>> text;
    for (std::size_t j = 0; j < rec.columns.size(); ++j)
        width[j] = rec.columns[j].size();
    for (const auto& row : rec.rows) {
        auto& t = text.emplace_back();
        for (std::size_t j = 0; j < row.size(); ++j) {
            t.push_back(cell_text(row[j], Format::table));
            width[j] = std::max(width[j], t.back().size());
        }
    }
    auto emit = [&](const std::vector<std::string>& cells) {
        std::string line;
        for (std::size_t j = 0; j < cells.size(); ++j) {
            if (j)
                line += "  ";
            line += cells[j];
            if (j + 1 < cells.size())
                line.append(width[j] - cells[j].size(), ' ');
        }
        line.erase(line.find_last_not_of(' ') + 1);
        os << line << '\n';
    };
    if (!rec.columns.empty()) {
        emit(rec.columns);
        for (const auto& t : text)
            emit(t);
    }
    for (const auto& note : rec.notes)
        os << note << '\n';
    if (rec.wall_time_s)
        os << "wall time " << format_number(*rec.wall_time_s, Format::table) << " s\n";
    if (rec.timestamp)
        os << "timestamp " << *rec.timestamp << '\n';
    return os.str();
}

std::string render_csv(const RunRecord& rec) {
    std::ostringstream os;
    for (std::size_t j = 0; j < rec.columns.size(); ++j)
        os << (j ? "," : "") << csv_field(rec.columns[j]);
    os << '\n';
    for (const auto& row : rec.rows) {
        for (std::size_t j = 0; j < row.size(); ++j)
            os << (j ? "," : "") << csv_field(cell_text(row[j], Format::csv));
        os << '\n';
    }
    return os.str();
}

std::string render_json(const RunRecord& rec) {
    std::ostringstream os;
    os << "{\n  \"command\": " << nlohmann::json(rec.command).dump() << ",\n  \"parameters\": {";
    for (std::size_t i = 0; i < rec.parameters.size(); ++i)
        os << (i ? ", " : "") << nlohmann::json(rec.parameters[i].first).dump() << ": "
           << json_cell(rec.parameters[i].second);
    os << "},\n  \"results\": [";
    for (std::size_t r = 0; r < rec.rows.size(); ++r) {
        os << (r ? ",\n    {" : "\n    {");
        for (std::size_t j = 0; j < rec.columns.size(); ++j)
            os << (j ? ", " : "") << nlohmann::json(rec.columns[j]).dump() << ": " << json_cell(rec.rows[r][j]);
        os << '}';
    }
    os << (rec.rows.empty() ? "]" : "\n  ]") << ",\n  \"notes\": [";
    for (std::size_t i = 0; i < rec.notes.size(); ++i)
        os << (i ? ", " : "") << nlohmann::json(rec.notes[i]).dump();
    os << ']';
    if (rec.timestamp)
        os << ",\n  \"timestamp\": " << nlohmann::json(*rec.timestamp).dump();
    if (rec.wall_time_s)
        os << ",\n  \"wall_time_s\": " << format_number(*rec.wall_time_s, Format::json);
    os << "\n}\n";
    return os.str();
}

} // namespace

std::optional<Format> parse_format(std::string_view text) noexcept {
    if (text == "table")
        return Format::table;
    if (text == "csv")
        return Format::csv;
    if (text == "json")
        return Format::json;
    return std::nullopt;
}

std::string format_number(double v, Format f) {
    char buf[40];
    std::snprintf(buf, sizeof buf, f == Format::table ? "%.6g" : "%.17g", v);
    return buf;
}

std::string render(const RunRecord& rec, Format f) {
    switch (f) {
    case Format::table:
        return render_table(rec);
    case Format::csv:
        return render_csv(rec);
    case Format::json:
        return render_json(rec);
    }
    return {};
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace upb::cli
