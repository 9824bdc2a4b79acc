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

#include "cli/commands.hpp"

#include "upb/bounds.hpp"
#include "upb/constellation.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli_run(std::vector<std::string> args) {
    args.insert(args.begin(), "upb");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = upb::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("upb_cli_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        auto& row = rows.emplace_back();
        std::stringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');)
            row.push_back(cell);
        if (!line.empty() && line.back() == ',')
            row.emplace_back();
    }
    return rows;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

} // namespace

TEST_CASE("bound as json") {
    const auto dir = scratch("bound_json");
    const Run r = cli_run({"bound", "--n", "2", "--m", "128", "--method", "b1", "--format", "json", "--cache-dir",
                       dir.string(), "--no-timestamp"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc["results"].size() == 1);
    CHECK(std::abs(doc["results"][0]["value"].get<double>() - 0.5347) <= 0.005);
    CHECK(doc["results"][0]["method"] == "b1");
    CHECK_FALSE(doc.contains("timestamp"));
}

TEST_CASE("bound for n = 1 collapses to sin(pi/8)") {
    const auto dir = scratch("bound_n1");
    const Run r = cli_run({"bound", "--n", "1", "--m", "8", "--method", "all", "--format", "csv", "--cache-dir",
                       dir.string()});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(std::stod(rows[i][5]) == doctest::Approx(std::sin(std::numbers::pi / 8.0)).epsilon(1e-6));
}

TEST_CASE("usage errors exit 1") {
    const Run r = cli_run({"bound", "--n", "2", "--m", "1", "--no-cache"});
    CHECK(r.code == 1);
    CHECK(r.err.find("m must be ≥ 2") != std::string::npos);
    CHECK(cli_run({"bound", "--n", "2", "--m", "4", "--format", "xml", "--no-cache"}).code == 1);
    CHECK(cli_run({"bound", "--n", "2", "--m", "4", "--strategy", "grid", "--no-cache"}).code == 1);
    CHECK(cli_run({"bound", "--n", "2", "--m", "4", "--method", "b3", "--metric", "euclidean", "--no-cache"}).code == 1);
    CHECK(cli_run({"bound", "--n", "5", "--m", "4", "--strategy", "tensor", "--no-cache"}).code == 1);
    CHECK(cli_run({"bound", "--bogus"}).code == 1);
    CHECK(cli_run({}).code == 1);
    CHECK(cli_run({"--help"}).code == 0);
}

TEST_CASE("numerical failure exits 2") {
    // No bracket of doubles is that narrow, so the step limit trips.
    const Run r = cli_run({"bound", "--n", "2", "--m", "4", "--root-tol", "1e-300", "--no-cache"});
    CHECK(r.code == 2);
    CHECK(r.err.find("numerical failure") != std::string::npos);
}

TEST_CASE("structured output is byte-identical across runs and cache hits") {
    const auto dir = scratch("determinism");
    const std::vector<std::string> args = {"bound",   "--n",      "4",          "--m",         "6",
                                           "--samples", "20000",  "--format",   "json",        "--cache-dir",
                                           dir.string(), "--no-timestamp"};
    const Run fresh = cli_run(args);
    const Run cached = cli_run(args);
    auto uncached_args = args;
    uncached_args.back() = "--no-cache";
    uncached_args.push_back("--no-timestamp");
    const Run uncached = cli_run(uncached_args);
    REQUIRE(fresh.code == 0);
    CHECK(fresh.out == cached.out);
    CHECK(fresh.out == uncached.out);
}

TEST_CASE("cache entries agree with a fresh solve") {
    const auto dir = scratch("cache");
    REQUIRE(cli_run({"bound", "--n", "3", "--m", "7", "--cache-dir", dir.string()}).code == 0);
    const auto doc = nlohmann::json::parse(slurp(dir / "r0-cache.json"));
    upb::SolverConfig cfg;
    for (upb::Metric metric : {upb::Metric::euclidean, upb::Metric::riemannian}) {
        const std::string key = upb::config_fingerprint(3, 7, metric, cfg);
        REQUIRE(doc["entries"].contains(key));
        const double cached = doc["entries"][key]["r0"].get<double>();
        CHECK(std::abs(cached - upb::solve_r0(3, 7, metric, cfg).r0) <= cfg.root_tol);
    }
}

TEST_CASE("cache directory from the environment") {
    const auto dir = scratch("env_cache");
    ::setenv("UPB_CACHE_DIR", dir.string().c_str(), 1);
    const Run r = cli_run({"bound", "--n", "1", "--m", "5"});
    ::unsetenv("UPB_CACHE_DIR");
    CHECK(r.code == 0);
    CHECK(fs::exists(dir / "r0-cache.json"));
}

TEST_CASE("table compares against the reference values") {
    const auto dir = scratch("table");
    const Run r = cli_run({"table", "--format", "csv", "--cache-dir", dir.string()});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 17);
    CHECK(rows[0] == std::vector<std::string>{"m", "method", "r0", "computed", "reference", "deviation",
                                              "within_tolerance"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double dev = std::stod(rows[i][5]);
        CHECK(dev == doctest::Approx(std::abs(std::stod(rows[i][3]) - std::stod(rows[i][4]))));
        CHECK(rows[i][6] == (dev <= 0.005 ? "yes" : "no"));
    }
    CHECK(std::abs(std::stod(rows[1][3]) - 0.7598) <= 0.005); // m = 24, b1
    CHECK(std::abs(std::stod(rows[4][3]) - 0.6734) <= 0.005); // m = 48, b2
}

TEST_CASE("sweeps") {
    const auto dir = scratch("sweep");
    const std::vector<std::string> header = {"n", "m", "method", "metric", "r0", "value", "std_error",
                                             "strategy", "samples", "seed"};

    SUBCASE("n = 2 geometric, written to a file") {
        const auto out = dir / "n2.csv";
        REQUIRE(cli_run({"sweep", "--n", "2", "--m-start", "8", "--m-end", "1024", "--m-factor", "2", "--method", "b1",
                     "--out", out.string(), "--cache-dir", dir.string()})
                    .code == 0);
        const auto rows = parse_csv(slurp(out));
        REQUIRE(rows.size() == 9);
        CHECK(rows[0] == header);
        for (std::size_t i = 2; i < rows.size(); ++i) {
            CHECK(rows[i].size() == header.size());
            CHECK(std::stod(rows[i][5]) < std::stod(rows[i - 1][5]));
        }
    }
    SUBCASE("n = 1 matches sin(pi/m)") {
        const Run r = cli_run({"sweep", "--n", "1", "--m-start", "2", "--m-end", "40", "--method", "b1", "--cache-dir",
                           dir.string()});
        REQUIRE(r.code == 0);
        const auto rows = parse_csv(r.out);
        REQUIRE(rows.size() == 40);
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const double m = std::stod(rows[i][1]);
            CHECK(std::stod(rows[i][5]) == doctest::Approx(std::sin(std::numbers::pi / m)).epsilon(1e-6));
        }
    }
    SUBCASE("n = 3 values stay in (0, 1] and never increase") {
        const Run r = cli_run({"sweep", "--n", "3", "--m-start", "2", "--m-end", "30", "--m-step", "4", "--cache-dir",
                           dir.string()});
        REQUIRE(r.code == 0);
        const auto rows = parse_csv(r.out);
        REQUIRE(rows.size() == 1 + 8 * 3);
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const double v = std::stod(rows[i][5]);
            CHECK((v > 0.0 && v <= 1.0));
            if (i > 3)
                CHECK(v <= std::stod(rows[i - 3][5]));
        }
    }
    SUBCASE("bad ranges and paths") {
        CHECK(cli_run({"sweep", "--n", "2", "--m-end", "10", "--out", "/nonexistent-dir/x.csv", "--no-cache"}).code == 1);
        CHECK(cli_run({"sweep", "--n", "2", "--m-start", "1", "--m-end", "10", "--no-cache"}).code == 1);
        CHECK(cli_run({"sweep", "--n", "2", "--m-start", "9", "--m-end", "4", "--no-cache"}).code == 1);
        CHECK(cli_run({"sweep", "--n", "2", "--m-end", "9", "--m-step", "2", "--m-factor", "2", "--no-cache"}).code == 1);
    }
}

TEST_CASE("eval") {
    const auto dir = scratch("eval");
    write_file(dir / "antipodal.json",
               R"({"n": 2, "label": "I and -I", "matrices": [[[[1, 0], [0, 0]], [[0, 0], [1, 0]]], )"
               R"([[[-1, 0], [0, 0]], [[0, 0], [-1, 0]]]]})");
    write_file(dir / "flat.json", R"({"n": 2, "matrices": [[[[1, 0], [0, 0]], [[0, 0], [1, 0]]], )"
                                  R"([[[1, 0], [0, 0]], [[0, 0], [-1, 0]]]]})");
    write_file(dir / "dup.json", R"({"n": 2, "matrices": [[[[1, 0], [0, 0]], [[0, 0], [1, 0]]], )"
                                 R"([[[1, 0], [0, 0]], [[0, 0], [1, 0]]]]})");

    const Run a = cli_run({"eval", (dir / "antipodal.json").string(), "--bounds", "--format", "json", "--cache-dir",
                       dir.string(), "--no-timestamp"});
    REQUIRE(a.code == 0);
    const auto doc = nlohmann::json::parse(a.out);
    const auto& res = doc["results"];
    CHECK(res[0]["quantity"] == "diversity_sum");
    CHECK(res[0]["value"].get<double>() == doctest::Approx(1.0));
    CHECK(res[1]["value"].get<double>() == doctest::Approx(1.0));
    CHECK(res[3]["quantity"] == "b1");
    CHECK(res[3]["gap"].get<double>() == doctest::Approx(res[3]["value"].get<double>() - 1.0));

    const Run f = cli_run({"eval", (dir / "flat.json").string()});
    REQUIRE(f.code == 0);
    CHECK(f.out.find("not fully diverse") != std::string::npos);

    const Run d = cli_run({"eval", (dir / "dup.json").string()});
    CHECK(d.code == 1);
    CHECK(d.err.find("coincide") != std::string::npos);
    CHECK(cli_run({"eval", (dir / "missing.json").string()}).code == 1);
}

TEST_CASE("search saves a reproducible constellation") {
    const auto dir = scratch("search");
    const auto one = dir / "one.json";
    const auto two = dir / "two.json";
    const Run r = cli_run({"search", "--n", "1", "--m", "6", "--trials", "10000", "--seed", "4", "--out", one.string(),
                       "--format", "json", "--cache-dir", dir.string(), "--no-timestamp"});
    REQUIRE(r.code == 0);
    REQUIRE(cli_run({"search", "--n", "1", "--m", "6", "--trials", "10000", "--seed", "4", "--out", two.string(),
                 "--cache-dir", dir.string()})
                .code == 0);
    CHECK(slurp(one) == slurp(two));
    const auto doc = nlohmann::json::parse(r.out);
    const double score = doc["results"][0]["value"].get<double>();
    CHECK(score >= 0.475);
    for (std::size_t i = 4; i < 7; ++i)
        CHECK(doc["results"][i]["gap"].get<double>() >= 0.0);
    CHECK(upb::diversity_sum(upb::load_constellation(one)).value == doctest::Approx(score));
    CHECK(cli_run({"search", "--n", "1", "--m", "6", "--trials", "0", "--out", one.string(), "--no-cache"}).code == 1);
    CHECK(cli_run({"search", "--n", "1", "--m", "6", "--objective", "max", "--out", one.string(), "--no-cache"}).code ==
          1);
}

TEST_CASE("selftest passes and catches an injected fault") {
    CHECK(cli_run({"selftest"}).code == 0);
    const Run bad = cli_run({"selftest", "--inject-fault", "density-sign"});
    CHECK(bad.code == 2);
    CHECK(bad.out.find("FAIL") != std::string::npos);
}
