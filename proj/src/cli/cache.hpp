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

// On-disk cache of packing-radius solves, keyed by the solver fingerprint.

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>

namespace upb::cli {

struct CacheEntry {
    std::string key; ///< "n:m:metric:strategy:samples:nodes:seed:root_tol"
    double r0 = 0.0;
    double r0_uncertainty = 0.0;
    std::uint64_t samples_used = 0;
    std::uint64_t nodes_used = 0;
    std::string timestamp;
};

/// One JSON document, `r0-cache.json`, inside the cache directory. Entries are
/// content-addressed and never expire.
class RadiusCache {
  public:
    explicit RadiusCache(std::filesystem::path dir);

    /// Flag value, else $UPB_CACHE_DIR, else ".upb-cache".
    static std::filesystem::path resolve_dir(const std::optional<std::string>& flag);

    std::optional<CacheEntry> lookup(const std::string& key) const;

    /// Read-modify-write with an atomic rename. Creates the directory.
    void store(const CacheEntry& entry);

    std::filesystem::path file() const { return dir_ / "r0-cache.json"; }

  private:
    std::filesystem::path dir_;
    mutable std::mutex mu_;
};

} // namespace upb::cli
