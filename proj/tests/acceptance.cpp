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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include "upb/bounds.hpp"
#include "upb/constellation.hpp"
#include "upb/weyl_volume.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace upb;

namespace {

constexpr double kPi = std::numbers::pi;

// Pinned tolerances.
constexpr double kTableTol = 0.005;
constexpr double kTableSeconds = 60.0;
constexpr double kCollapseTol = 1e-6;
constexpr double kCollapseSeconds = 5.0;
constexpr double kCrossover3Tol = 2e-3;
constexpr double kCrossover100Tol = 2e-2;
constexpr double kCrossoverMillionTol = 1e-2;
constexpr double kCrossoverSeconds = 1.0;
constexpr double kNormalizerRelTol = 0.01;
constexpr double kProductSumSlack = 1e-12;
constexpr double kEnvelopeUpperSlack = 1e-9;
// For n = 1 the lower envelope is an identity, so only rounding separates the sides.
constexpr double kEnvelopeLowerSlack = 1e-12;
constexpr double kDominanceSlack = 5e-3;

struct Outcome {
    bool pass;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

const std::size_t kTableM[] = {24, 48, 64, 80, 100, 120, 128, 1000};
const double kTableB1[] = {0.7598, 0.6603, 0.6131, 0.5932, 0.5578, 0.5425, 0.5347, 0.3270};
const double kTableB2[] = {0.7794, 0.6734, 0.6235, 0.6026, 0.5654, 0.5496, 0.5415, 0.3285};

Outcome table_row(BoundId id, const double* reference) {
    const auto t0 = std::chrono::steady_clock::now();
    SolverConfig cfg;
    cfg.integration.strategy = Strategy::tensor;
    std::ostringstream detail;
    bool ok = true;
    for (std::size_t i = 0; i < 8; ++i) {
        const double v = compute_bound(id, 2, kTableM[i], cfg).value;
        const double dev = std::abs(v - reference[i]);
        if (dev > kTableTol) {
            ok = false;
            detail << " m=" << kTableM[i] << ": " << fmt("%.4f", v) << " vs " << fmt("%.4f", reference[i]) << " (off "
                   << fmt("%.4f", dev) << ")";
        }
    }
    const double secs = seconds_since(t0);
    ok = ok && secs < kTableSeconds;
    return {ok, (ok ? std::string("all 8 within 0.005") : "outside tolerance:" + detail.str()) + ", " +
                    fmt("%.2f", secs) + " s"};
}

Outcome collapse() {
    const auto t0 = std::chrono::steady_clock::now();
    SolverConfig cfg;
    cfg.integration.strategy = Strategy::tensor;
    double worst = 0.0;
    for (std::size_t m = 2; m <= 64; ++m)
        for (BoundId id : {BoundId::b1, BoundId::b2, BoundId::b3})
            worst = std::max(worst, std::abs(compute_bound(id, 1, m, cfg).value - std::sin(kPi / m)));
    const double secs = seconds_since(t0);
    return {worst <= kCollapseTol && secs < kCollapseSeconds,
            "max deviation " + fmt("%.2e", worst) + ", " + fmt("%.3f", secs) + " s"};
}

Outcome crossover() {
    const auto t0 = std::chrono::steady_clock::now();
    const double c3 = crossover_radius(3).value_or(NAN);
    const double c100 = crossover_radius(100).value_or(NAN);
    const double cm = crossover_radius(1000000).value_or(NAN) / 1000.0;
    const double secs = seconds_since(t0);
    const bool ok = std::abs(c3 - 2.0881) <= kCrossover3Tol && std::abs(c100 - 11.9155) <= kCrossover100Tol &&
                    std::abs(cm - 1.1892) <= kCrossoverMillionTol && secs < kCrossoverSeconds;
    return {ok, fmt("r(3)=%.5f", c3) + fmt(" r(100)=%.5f", c100) + fmt(" r(1e6)/1e3=%.5f", cm) + ", " +
                    fmt("%.3f", secs) + " s"};
}

Outcome normalizer() {
    IntegrationConfig mc;
    mc.strategy = Strategy::monte_carlo;
    mc.samples = 1'000'000;
    std::ostringstream detail;
    bool ok = true;
    for (std::size_t n = 2; n <= 4; ++n) {
        const double rel = std::abs(full_domain_mass_mc(n, mc).value / total_mass(n) - 1.0);
        ok = ok && rel <= kNormalizerRelTol;
        detail << (n > 2 ? " " : "") << "n=" << n << ": " << fmt("%.2e", rel);
    }
    return {ok, "relative errors " + detail.str()};
}

Outcome product_below_sum() {
    Rng rng(20030501);
    std::uniform_int_distribution<std::size_t> pick_n(1, 4), pick_m(2, 8);
    std::size_t bad = 0;
    for (int t = 0; t < 500; ++t) {
        const std::size_t n = pick_n(rng);
        const std::size_t m = pick_m(rng);
        std::vector<UnitaryMatrix> members;
        for (std::size_t i = 0; i < m; ++i)
            members.push_back(haar_sample(n, rng));
        const Constellation v(std::move(members));
        bad += diversity_product(v).value > diversity_sum(v).value + kProductSumSlack;
    }
    return {bad == 0, std::to_string(bad) + " of 500 violate"};
}

Outcome envelope() {
    Rng rng(20030502);
    std::uniform_int_distribution<std::size_t> pick_n(1, 5);
    std::size_t bad = 0;
    double worst_low = -INFINITY;
    for (int t = 0; t < 1000; ++t) {
        const std::size_t n = pick_n(rng);
        const UnitaryMatrix a = haar_sample(n, rng);
        const UnitaryMatrix b = haar_sample(n, rng);
        const double d = chordal_distance(a, b);
        const auto env = euclidean_riemannian_envelope(n, d);
        const double g = riemannian_distance(a, b);
        worst_low = std::max(worst_low, env.lower - g);
        bad += !(env.lower <= g + kEnvelopeLowerSlack && g <= env.upper + kEnvelopeUpperSlack);
    }
    return {bad == 0, std::to_string(bad) + " of 1000 violate, max(lower - distance) = " + fmt("%.2e", worst_low)};
}

Outcome dominance() {
    SolverConfig cfg;
    std::vector<std::pair<std::size_t, std::size_t>> cases;
    for (std::size_t m = 2; m <= 16; ++m)
        cases.emplace_back(2, m);
    for (std::size_t n = 1; n <= 5; ++n)
        for (std::size_t m : {2, 3})
            if (n != 2)
                cases.emplace_back(n, m);
    std::ostringstream detail;
    double worst = INFINITY;
    for (const auto& [n, m] : cases) {
        const double exact = exact_delta(n, m).value();
        for (BoundId id : {BoundId::b1, BoundId::b2, BoundId::b3}) {
            const double v = compute_bound(id, n, m, cfg).value;
            worst = std::min(worst, v - exact);
            if (v < exact - kDominanceSlack)
                detail << " " << to_string(id) << "(" << n << "," << m << ")=" << fmt("%.4f", v) << "<"
                       << fmt("%.4f", exact);
        }
    }
    const std::string d = detail.str();
    return {d.empty(), std::to_string(cases.size()) + " cases, min(bound - optimum) = " + fmt("%.4f", worst) + d};
}

Outcome monotone() {
    SolverConfig cfg;
    double prev_b = INFINITY, prev_r = INFINITY;
    bool ok = true;
    std::ostringstream detail;
    for (std::size_t m : {8, 16, 32, 64, 128, 256, 512, 1024}) {
        const BoundResult b = bound_b1(2, m, cfg);
        ok = ok && b.value < prev_b && b.r0 < prev_r;
        detail << " " << fmt("%.4f", b.value);
        prev_b = b.value;
        prev_r = b.r0;
    }
    return {ok, "B1:" + detail.str()};
}

Outcome instances() {
    SolverConfig cfg;
    std::ostringstream detail;
    bool ok = true;
    for (const auto& [n, m] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 4}, {2, 4}, {2, 8}}) {
        double cap = 1.0;
        for (BoundId id : {BoundId::b1, BoundId::b2, BoundId::b3})
            cap = std::min(cap, compute_bound(id, n, m, cfg).value);
        double best = 0.0;
        for (std::uint64_t seed = 1; seed <= 5; ++seed)
            best = std::max(best, random_search(n, m, 2000, seed, Objective::sum).score);
        ok = ok && best <= cap;
        detail << " (" << n << "," << m << "): " << fmt("%.4f", best) << " <= " << fmt("%.4f", cap);
    }
    return {ok, "best score vs min bound" + detail.str()};
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {"n=2 B1 row matches the reference table", [] { return table_row(BoundId::b1, kTableB1); }},
        {"n=2 B2 row matches the reference table", [] { return table_row(BoundId::b2, kTableB2); }},
        {"n=1 bounds collapse to sin(pi/m), m=2..64", collapse},
        {"B1/B2 crossover constants", crossover},
        {"Monte Carlo normalizer for n=2,3,4", normalizer},
        {"diversity product <= sum on 500 constellations", product_below_sum},
        {"distance envelope on 1000 pairs", envelope},
        {"bounds dominate known optima", dominance},
        {"B1(2,m) and r0 strictly decrease in m", monotone},
        {"random search never beats the bounds", instances},
    };
    int failed = 0;
    int k = 0;
    for (const auto& c : criteria) {
        const Outcome o = c.run();
        failed += !o.pass;
        std::printf("%s [%d] %s: %s\n", o.pass ? "PASS" : "FAIL", ++k, c.name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %d criteria passed\n", k - failed, k);
    return failed;
}
