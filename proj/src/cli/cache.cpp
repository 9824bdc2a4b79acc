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

#include "cli/cache.hpp"

#include "upb/errors.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace upb::cli {

namespace {

nlohmann::json read_document(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        return nlohmann::json::object();
    try {
        nlohmann::json doc = nlohmann::json::parse(in);
        if (doc.is_object() && doc.contains("entries") && doc["entries"].is_object())
            return doc;
    } catch (const nlohmann::json::exception&) {
    }
    std::cerr << "warning: ignoring unreadable cache file " << file.string() << '\n';
    return nlohmann::json::object();
}

} // namespace

RadiusCache::RadiusCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path RadiusCache::resolve_dir(const std::optional<std::string>& flag) {
    if (flag && !flag->empty())
        return *flag;
    if (const char* env = std::getenv("UPB_CACHE_DIR"); env && *env)
        return env;
    return ".upb-cache";
}

std::optional<CacheEntry> RadiusCache::lookup(const std::string& key) const {
    std::lock_guard lock(mu_);
    const nlohmann::json doc = read_document(file());
    if (!doc.contains("entries") || !doc["entries"].contains(key))
        return std::nullopt;
    const auto& e = doc["entries"][key];
    try {
        CacheEntry out;
        out.key = key;
        out.r0 = e.at("r0").get<double>();
        out.r0_uncertainty = e.at("r0_uncertainty").get<double>();
        out.samples_used = e.at("samples_used").get<std::uint64_t>();
        out.nodes_used = e.at("nodes_used").get<std::uint64_t>();
        out.timestamp = e.value("timestamp", "");
        return out;
    } catch (const nlohmann::json::exception&) {
        return std::nullopt;
    }
}

void RadiusCache::store(const CacheEntry& entry) {
    std::lock_guard lock(mu_);
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    nlohmann::json doc = read_document(file());
    if (!doc.contains("entries"))
        doc["entries"] = nlohmann::json::object();
    doc["entries"][entry.key] = {{"r0", entry.r0},
                                 {"r0_uncertainty", entry.r0_uncertainty},
                                 {"samples_used", entry.samples_used},
                                 {"nodes_used", entry.nodes_used},
                                 {"timestamp", entry.timestamp}};
    const auto tmp = dir_ / "r0-cache.json.tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out)
            throw Error("cannot write cache file in " + dir_.string());
        out << doc.dump(2) << '\n';
    }
    std::filesystem::rename(tmp, file(), ec);
    if (ec)
        throw Error("cannot update cache file " + file().string() + ": " + ec.message());
}

} // namespace upb::cli
