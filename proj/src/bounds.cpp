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

#include "upb/bounds.hpp"

#include "upb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

namespace upb {

namespace {

constexpr double kPi = std::numbers::pi;

// Node ceiling for tensor refinement; n = 3 costs nodes^2 directions.
std::size_t tensor_node_cap(std::size_t n) { return n <= 2 ? 3200 : 800; }

void require_n_m(std::size_t n, std::size_t m) {
    if (n < 1)
        throw RangeError("n must be ≥ 1");
    if (m < 2)
        throw RangeError("m must be ≥ 2");
}

// k = floor(q) with q snapped to an integer when within 1e-12 of one.
std::pair<double, double> floor_split(double q) {
    const double nearest = std::round(q);
    if (std::abs(q - nearest) <= 1e-12)
        q = nearest;
    const double k = std::floor(q);
    return {k, std::max(0.0, q - k)};
}

double b2_argument(std::size_t n, double r) {
    const double nn = static_cast<double>(n);
    const auto [k, alpha] = floor_split(0.25 * r * r);
    const double as = std::asin(std::min(1.0, std::sqrt(alpha)));
    return std::sqrt(kPi * kPi * k / nn + 4.0 / nn * as * as);
}

std::string format_tol(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace

std::string_view to_string(BoundId id) noexcept {
    switch (id) {
    case BoundId::b1:
        return "b1";
    case BoundId::b2:
        return "b2";
    case BoundId::b3:
        return "b3";
    }
    return "unknown";
}

std::optional<BoundId> parse_bound(std::string_view text) noexcept {
    if (text == "b1" || text == "B1")
        return BoundId::b1;
    if (text == "b2" || text == "B2")
        return BoundId::b2;
    if (text == "b3" || text == "B3")
        return BoundId::b3;
    return std::nullopt;
}

Metric metric_of(BoundId id) noexcept { return id == BoundId::b3 ? Metric::riemannian : Metric::euclidean; }

void SolverConfig::validate() const {
    integration.validate();
    if (!(root_tol > 0.0))
        throw ConfigError("root_tol must be positive");
    if (max_bisection_steps == 0)
        throw ConfigError("max_bisection_steps must be positive");
}

RadiusSolution solve_r0(std::size_t n, std::size_t m, Metric metric, const SolverConfig& cfg,
                        const kernels::KernelTable& table) {
    require_n_m(n, m);
    cfg.validate();

    const double full = total_mass(n);
    const double md = static_cast<double>(m);
    IntegrationConfig icfg = cfg.integration;
    const Strategy strategy = icfg.resolve(n);

    for (std::size_t refinement = 0;; ++refinement) {
        const BallMassIntegrator mass(n, metric, icfg, table);
        double lo = 0.0;
        double hi = max_radius(n, metric);
        std::vector<std::pair<double, double>> seen;
        std::size_t steps = 0;
        while (hi - lo > cfg.root_tol) {
            if (steps == cfg.max_bisection_steps)
                throw NumericalFailure("bisection did not reach root_tol within max_bisection_steps", lo, hi);
            const double mid = 0.5 * (lo + hi);
            const double v = mass(mid).value;
            seen.emplace_back(mid, v);
            if (md * v < full)
                lo = mid;
            else
                hi = mid;
            ++steps;
        }
        const bool last = refinement >= cfg.integration.max_refinements;

        if (strategy == Strategy::monte_carlo) {
            std::sort(seen.begin(), seen.end());
            const bool monotone = std::adjacent_find(seen.begin(), seen.end(), [](const auto& a, const auto& b) {
                                      return b.second < a.second;
                                  }) == seen.end();
            if (!monotone) {
                if (last)
                    throw NumericalFailure("ball mass not monotone in r after max_refinements sample doublings", lo,
                                           hi);
                icfg.samples *= 2;
                continue;
            }
        }

        RadiusSolution sol;
        sol.r0 = 0.5 * (lo + hi);
        auto& diag = sol.diagnostics;
        diag.strategy = strategy;
        diag.bisection_steps = steps;
        diag.bracket_lo = lo;
        diag.bracket_hi = hi;
        diag.refinements = refinement;
        diag.mass_at_root = mass(sol.r0);
        diag.r0_uncertainty = 0.5 * (hi - lo);

        if (strategy == Strategy::tensor) {
            diag.nodes_used = icfg.nodes_per_axis;
            IntegrationConfig coarse = icfg;
            coarse.nodes_per_axis = std::max<std::size_t>(8, icfg.nodes_per_axis / 2);
            const double q_fine = diag.mass_at_root.value;
            const double q_coarse = BallMassIntegrator(n, metric, coarse, table)(sol.r0).value;
            diag.quadrature_rel_change = q_fine > 0.0 ? std::abs(q_fine - q_coarse) / q_fine : 0.0;
            const bool can_refine = !last && icfg.nodes_per_axis * 2 <= tensor_node_cap(n);
            if (diag.quadrature_rel_change > icfg.rel_tol && can_refine) {
                icfg.nodes_per_axis *= 2;
                continue;
            }
        } else {
            diag.samples_used = icfg.samples;
            const double se = diag.mass_at_root.std_error;
            const double h = std::max(cfg.root_tol, 1e-3 * sol.r0);
            const double rlo = std::max(0.0, sol.r0 - h);
            const double slope = (mass(sol.r0 + h).value - mass(rlo).value) / (sol.r0 + h - rlo);
            if (slope > 0.0)
                diag.r0_uncertainty += se / slope;
        }
        return sol;
    }
}

double b1_of_r(std::size_t n, double r) {
    const double nn = static_cast<double>(n);
    const double r2 = r * r;
    if (r2 >= 2.0 * nn)
        return 1.0;
    const double v = r2 / nn - r2 * r2 / (4.0 * nn * nn);
    return std::min(1.0, std::sqrt(std::max(0.0, v)));
}

double b2_of_r(std::size_t n, double r) { return std::sin(std::min(0.5 * kPi, b2_argument(n, r))); }

double b2_unclamped_of_r(std::size_t n, double r) { return std::sin(b2_argument(n, r)); }

double b3_of_r(std::size_t n, double r) {
    return std::sin(std::min(0.5 * kPi, r / std::sqrt(static_cast<double>(n))));
}

double bound_of_r(BoundId id, std::size_t n, double r) {
    switch (id) {
    case BoundId::b1:
        return b1_of_r(n, r);
    case BoundId::b2:
        return b2_of_r(n, r);
    case BoundId::b3:
        return b3_of_r(n, r);
    }
    return 1.0;
}

std::string config_fingerprint(std::size_t n, std::size_t m, Metric metric, const SolverConfig& cfg) {
    const auto& ic = cfg.integration;
    std::ostringstream os;
    os << n << ':' << m << ':' << to_string(metric) << ':' << to_string(ic.resolve(n)) << ':' << ic.samples << ':'
       << ic.nodes_per_axis << ':' << ic.seed << ':' << format_tol(cfg.root_tol);
    return os.str();
}

BoundResult bound_from_radius(BoundId id, std::size_t n, std::size_t m, const RadiusSolution& sol,
                              const SolverConfig& cfg) {
    BoundResult res;
    res.n = n;
    res.m = m;
    res.bound = id;
    res.metric = metric_of(id);
    res.r0 = sol.r0;
    res.value = std::clamp(bound_of_r(id, n, sol.r0), 0.0, 1.0);
    const double du = sol.diagnostics.r0_uncertainty;
    const double up = bound_of_r(id, n, std::min(sol.r0 + du, max_radius(n, res.metric)));
    const double down = bound_of_r(id, n, std::max(0.0, sol.r0 - du));
    res.std_error_hint = 0.5 * std::abs(up - down);
    res.fingerprint = config_fingerprint(n, m, res.metric, cfg);
    res.diagnostics = sol.diagnostics;
    return res;
}

BoundResult compute_bound(BoundId id, std::size_t n, std::size_t m, const SolverConfig& cfg,
                          const kernels::KernelTable& table) {
    return bound_from_radius(id, n, m, solve_r0(n, m, metric_of(id), cfg, table), cfg);
}

BoundResult bound_b1(std::size_t n, std::size_t m, const SolverConfig& cfg, const kernels::KernelTable& table) {
    return compute_bound(BoundId::b1, n, m, cfg, table);
}

BoundResult bound_b2(std::size_t n, std::size_t m, const SolverConfig& cfg, const kernels::KernelTable& table) {
    return compute_bound(BoundId::b2, n, m, cfg, table);
}

BoundResult bound_b3(std::size_t n, std::size_t m, const SolverConfig& cfg, const kernels::KernelTable& table) {
    return compute_bound(BoundId::b3, n, m, cfg, table);
}

std::optional<double> crossover_radius(std::size_t n) {
    if (n < 2)
        throw RangeError("crossover_radius needs n >= 2");
    const double top = std::sqrt(2.0 * static_cast<double>(n));
    auto diff = [n](double r) { return b1_of_r(n, r) - b2_unclamped_of_r(n, r); };

    // Scan for the first negative-to-positive change, then bisect it.
    constexpr int kScan = 20000;
    const double start = 1e-3 * std::sqrt(static_cast<double>(n));
    double prev_r = start;
    double prev = diff(prev_r);
    for (int i = 1; i <= kScan; ++i) {
        const double r = start + (top - start) * static_cast<double>(i) / kScan;
        const double cur = diff(r);
        if (prev < 0.0 && cur >= 0.0) {
            double lo = prev_r;
            double hi = r;
            for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
                const double mid = 0.5 * (lo + hi);
                (diff(mid) < 0.0 ? lo : hi) = mid;
            }
            return 0.5 * (lo + hi);
        }
        prev_r = r;
        prev = cur;
    }
    return std::nullopt;
}

std::optional<double> exact_delta(std::size_t n, std::size_t m) {
    require_n_m(n, m);
    if (n == 1)
        return std::sin(kPi / static_cast<double>(m));
    if (m == 2)
        return 1.0;
    if (m == 3)
        return std::sqrt(3.0) / 2.0;
    if (n == 2) {
        // sqrt(6)/3, sqrt(10)/4, sqrt(15)/5, sqrt(21)/6, sqrt(28)/7, sqrt(36)/8 for m = 4..9.
        static constexpr double kNumer[] = {6.0, 10.0, 15.0, 21.0, 28.0, 36.0};
        if (m <= 9)
            return std::sqrt(kNumer[m - 4]) / static_cast<double>(m - 1);
        if (m <= 16)
            return std::sqrt(2.0) / 2.0;
    }
    return std::nullopt;
}

DistanceEnvelope euclidean_riemannian_envelope(std::size_t n, double d) {
    if (n < 1)
        throw RangeError("n must be ≥ 1");
    const double root_n = std::sqrt(static_cast<double>(n));
    d = std::clamp(d, 0.0, 2.0 * root_n);
    DistanceEnvelope env;
    env.lower = 2.0 * root_n * std::asin(std::min(1.0, d / (2.0 * root_n)));
    const auto [k, alpha] = floor_split(0.25 * d * d);
    const double as = std::asin(std::min(1.0, std::sqrt(alpha)));
    env.upper = 2.0 * std::sqrt(k * kPi * kPi / 4.0 + as * as);
    return env;
}

AsymptoticLowerBound asymptotic_lower_bound(std::size_t n, std::size_t m, std::uint64_t tau, const SolverConfig& cfg,
                                            const kernels::KernelTable& table) {
    require_n_m(n, m);
    const double nn = static_cast<double>(n);
    AsymptoticLowerBound out;
    out.r0 = solve_r0(n, m, Metric::euclidean, cfg, table).r0;
    out.value = 2.0 * std::sqrt(nn) * out.r0 * 0.5 * std::pow(static_cast<double>(tau) + 1.0, -1.0 / (nn * nn));
    return out;
}

} // namespace upb
