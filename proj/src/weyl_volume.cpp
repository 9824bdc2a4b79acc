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

#include "upb/weyl_volume.hpp"

#include "upb/errors.hpp"
#include "upb/quadrature.hpp"

#include "upb/matrix_core.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <random>
#include <string>
#include <thread>

namespace upb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kChunk = 16384;
constexpr double kClip = 1.0 - 1e-12;

constexpr std::uint64_t kBallStream = 1;
constexpr std::uint64_t kCubeStream = 2;
constexpr std::uint64_t kNormalizerStream = 3;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t chunk) {
    return splitmix64(splitmix64(seed ^ (stream * 0xD1B54A32D192ED03ull)) + chunk);
}

double unit_ball_volume(std::size_t n) {
    const double h = static_cast<double>(n) / 2.0;
    return std::pow(kPi, h) / std::tgamma(h + 1.0);
}

// Runs fn(chunk) for every chunk. Callers write into per-chunk slots and
// reduce in chunk order, so the result does not depend on the worker count.
template <typename F>
void run_chunks(std::size_t chunks, F&& fn) {
    const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min(hw, chunks);
    if (workers <= 1) {
        for (std::size_t c = 0; c < chunks; ++c)
            fn(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1))
                fn(c);
        });
}

// Chunk-local mean and centered sum of squares, merged pairwise in order.
struct Moments {
    double count = 0.0;
    double mean = 0.0;
    double m2 = 0.0;

    static Moments of(std::span<const double> v) {
        Moments m;
        m.count = static_cast<double>(v.size());
        if (v.empty())
            return m;
        double s = 0.0;
        for (double x : v)
            s += x;
        m.mean = s / m.count;
        for (double x : v) {
            const double d = x - m.mean;
            m.m2 += d * d;
        }
        return m;
    }

    void merge(const Moments& o) {
        if (o.count == 0.0)
            return;
        const double total = count + o.count;
        const double delta = o.mean - mean;
        mean += delta * o.count / total;
        m2 += o.m2 + delta * delta * count * o.count / total;
        count = total;
    }

    double std_error_of_mean() const {
        if (count < 2.0)
            return 0.0;
        return std::sqrt(m2 / (count - 1.0) / count);
    }
};

std::size_t chunk_count(std::uint64_t samples) { return static_cast<std::size_t>((samples + kChunk - 1) / kChunk); }

std::size_t chunk_length(std::uint64_t samples, std::size_t chunk) {
    const std::uint64_t begin = static_cast<std::uint64_t>(chunk) * kChunk;
    return static_cast<std::size_t>(std::min<std::uint64_t>(kChunk, samples - begin));
}

// Uniform points in the unit n-ball, coordinate-major per chunk.
struct BallChunk {
    std::size_t len = 0;
    std::vector<double> u;
};

std::vector<BallChunk> make_ball_samples(std::size_t n, std::uint64_t samples, std::uint64_t seed) {
    std::vector<BallChunk> out(chunk_count(samples));
    run_chunks(out.size(), [&](std::size_t c) {
        BallChunk& ch = out[c];
        ch.len = chunk_length(samples, c);
        ch.u.resize(n * ch.len);
        Rng rng(chunk_seed(seed, kBallStream, c));
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        std::vector<double> g(n);
        for (std::size_t p = 0; p < ch.len; ++p) {
            double norm2 = 0.0;
            do {
                norm2 = 0.0;
                for (auto& x : g) {
                    x = gauss(rng);
                    norm2 += x * x;
                }
            } while (norm2 == 0.0);
            const double radius = std::pow(unif(rng), 1.0 / static_cast<double>(n));
            const double scale = radius / std::sqrt(norm2);
            for (std::size_t j = 0; j < n; ++j)
                ch.u[j * ch.len + p] = g[j] * scale;
        }
    });
    return out;
}

// Uniform points in [-pi, pi)^n reduced to (density, region coordinate).
struct CubeChunk {
    std::vector<double> density;
    std::vector<double> level; ///< sum sin^2(theta/2) or sum theta^2
};

std::vector<CubeChunk> make_cube_samples(std::size_t n, Metric metric, std::uint64_t samples, std::uint64_t seed,
                                         std::uint64_t stream, const kernels::KernelTable& table) {
    std::vector<CubeChunk> out(chunk_count(samples));
    run_chunks(out.size(), [&](std::size_t c) {
        const std::size_t len = chunk_length(samples, c);
        Rng rng(chunk_seed(seed, stream, c));
        std::uniform_real_distribution<double> unif(-kPi, kPi);
        std::vector<double> theta(n * len), s(n * len), co(n * len);
        for (std::size_t p = 0; p < len; ++p)
            for (std::size_t j = 0; j < n; ++j)
                theta[j * len + p] = unif(rng);
        for (std::size_t i = 0; i < theta.size(); ++i) {
            s[i] = std::sin(0.5 * theta[i]);
            co[i] = std::cos(0.5 * theta[i]);
        }
        CubeChunk& ch = out[c];
        ch.density.resize(len);
        ch.level.resize(len);
        table.weyl_density(kernels::HalfAngleBatch{n, len, len, s, co}, ch.density);
        table.sum_of_squares(n, len, len, metric == Metric::euclidean ? s : theta, ch.level);
    });
    return out;
}

// Region sum_j g(theta_j) <= level on the torus, g(theta) = sin^2(theta/2)
// (chordal) or theta^2 (geodesic).
struct Region {
    bool chordal;
    double level;
    double cap; // g(pi)

    double cost(double t) const {
        if (chordal) {
            const double s = std::sin(0.5 * t);
            return s * s;
        }
        return t * t;
    }

    // Half-width of {theta in [-pi, pi) : g(theta) <= budget}.
    double width(double budget) const {
        if (budget <= 0.0)
            return 0.0;
        if (budget >= cap)
            return kPi;
        return chordal ? 2.0 * std::asin(std::sqrt(budget)) : std::sqrt(budget);
    }
};

// Gauss rule on [0, 1] pushed through u = (1 - cos(pi t)) / 2. The map is flat
// at both ends, which absorbs the square-root behaviour of the slice widths at
// panel edges.
struct EndpointRule {
    std::vector<double> u;
    std::vector<double> w;
};

EndpointRule endpoint_rule(std::size_t count) {
    const GaussRule g = gauss_legendre_unit(count);
    EndpointRule r;
    r.u.resize(count);
    r.w.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        r.u[i] = 0.5 * (1.0 - std::cos(kPi * g.nodes[i]));
        r.w[i] = g.weights[i] * 0.5 * kPi * std::sin(kPi * g.nodes[i]);
    }
    return r;
}

// Panel edges on [0, width(budget)]: the points where the budget left for the
// remaining `depth` coordinates crosses a multiple of cap, so that every slice
// width is smooth inside a panel.
std::vector<double> panel_edges(const Region& reg, double budget, int depth) {
    std::vector<double> e{0.0};
    for (int j = depth; j >= 1; --j) {
        const double b = budget - j * reg.cap;
        if (b > 0.0 && b < reg.cap)
            e.push_back(reg.width(b));
    }
    e.push_back(reg.width(budget));
    std::sort(e.begin(), e.end());
    return e;
}

template <typename F>
double panel_integral(const std::vector<double>& edges, const EndpointRule& rule, F&& f) {
    double acc = 0.0;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double lo = edges[p];
        const double len = edges[p + 1] - lo;
        if (!(len > 0.0))
            continue;
        double part = 0.0;
        for (std::size_t i = 0; i < rule.u.size(); ++i)
            part += rule.w[i] * f(lo + len * rule.u[i]);
        acc += len * part;
    }
    return acc;
}

// Integral over theta_3 in [-a, a] of the n = 3 density, in closed form:
// |e^{i t1} - e^{i t2}|^2 (2 - 2 cos(t3 - t1)) (2 - 2 cos(t3 - t2)).
double slice3(double t1, double t2, double a) {
    const double sd = std::sin(0.5 * (t1 - t2));
    const double pair = 4.0 * sd * sd;
    const double body = 2.0 * a + a * std::cos(t1 - t2) - 2.0 * std::sin(a) * (std::cos(t1) + std::cos(t2)) +
                        0.5 * std::sin(2.0 * a) * std::cos(t1 + t2);
    return 4.0 * pair * body;
}

} // namespace

std::string_view to_string(Metric m) noexcept { return m == Metric::euclidean ? "euclidean" : "riemannian"; }

std::string_view to_string(Strategy s) noexcept {
    switch (s) {
    case Strategy::automatic:
        return "auto";
    case Strategy::tensor:
        return "tensor";
    case Strategy::monte_carlo:
        return "mc";
    }
    return "unknown";
}

std::optional<Metric> parse_metric(std::string_view text) noexcept {
    if (text == "euclidean")
        return Metric::euclidean;
    if (text == "riemannian")
        return Metric::riemannian;
    return std::nullopt;
}

std::optional<Strategy> parse_strategy(std::string_view text) noexcept {
    if (text == "auto")
        return Strategy::automatic;
    if (text == "tensor" || text == "tensor-quadrature")
        return Strategy::tensor;
    if (text == "mc" || text == "monte-carlo")
        return Strategy::monte_carlo;
    return std::nullopt;
}

AnglePoint::AnglePoint(std::vector<double> angles) : angles_(std::move(angles)) {
    if (angles_.empty())
        throw DimensionError("angle point needs at least one coordinate");
    for (double t : angles_)
        if (!(t >= -kPi && t < kPi))
            throw ValidationError("angle " + std::to_string(t) + " outside [-pi, pi)");
}

void IntegrationConfig::validate() const {
    if (samples < 1000)
        throw ConfigError("samples must be at least 1000");
    if (nodes_per_axis < 8)
        throw ConfigError("nodes_per_axis must be at least 8");
    if (!(rel_tol > 0.0 && rel_tol < 0.1))
        throw ConfigError("rel_tol must lie in (0, 0.1)");
}

Strategy IntegrationConfig::resolve(std::size_t n) const noexcept {
    if (strategy != Strategy::automatic)
        return strategy;
    return n <= 3 ? Strategy::tensor : Strategy::monte_carlo;
}

double weyl_density(const AnglePoint& p) {
    const auto th = p.angles();
    double prod = 1.0;
    for (std::size_t j = 0; j < th.size(); ++j)
        for (std::size_t k = j + 1; k < th.size(); ++k) {
            const double s = std::sin(0.5 * (th[j] - th[k]));
            prod *= 4.0 * s * s;
        }
    return prod;
}

double total_mass(std::size_t n) {
    if (n == 0)
        throw DimensionError("total_mass: n must be at least 1");
    double m = 1.0;
    for (std::size_t k = 1; k <= n; ++k)
        m *= 2.0 * kPi * static_cast<double>(k);
    if (!std::isfinite(m))
        throw RangeError("total_mass overflows a double for n = " + std::to_string(n) + "; use log_total_mass");
    return m;
}

double log_total_mass(std::size_t n) {
    if (n == 0)
        throw DimensionError("log_total_mass: n must be at least 1");
    const double nn = static_cast<double>(n);
    return nn * std::log(2.0 * kPi) + std::lgamma(nn + 1.0);
}

double max_radius(std::size_t n, Metric metric) {
    const double root_n = std::sqrt(static_cast<double>(n));
    return metric == Metric::euclidean ? 2.0 * root_n : kPi * root_n;
}

struct BallMassIntegrator::Impl {
    std::size_t n;
    Metric metric;
    IntegrationConfig cfg;
    Strategy strategy;
    const kernels::KernelTable* table;
    double full;

    // Monte Carlo canonical samples, built on first use.
    mutable std::once_flag ball_once;
    mutable std::once_flag cube_once;
    mutable std::vector<BallChunk> ball;
    mutable std::vector<CubeChunk> cube;

    // Tensor quadrature: iterated product rule, innermost angle in closed form.
    EndpointRule rule;

    Impl(std::size_t n_, Metric metric_, IntegrationConfig cfg_, const kernels::KernelTable& table_)
        : n(n_), metric(metric_), cfg(cfg_), strategy(cfg_.resolve(n_)), table(&table_), full(total_mass(n_)) {
        if (strategy == Strategy::tensor) {
            if (n > 3)
                throw UnsupportedStrategy("tensor quadrature supports n <= 3, got n = " + std::to_string(n));
            rule = endpoint_rule(std::max<std::size_t>(8, cfg.nodes_per_axis / 4));
        }
    }

    const std::vector<BallChunk>& ball_samples() const {
        std::call_once(ball_once, [&] { ball = make_ball_samples(n, cfg.samples, cfg.seed); });
        return ball;
    }

    const std::vector<CubeChunk>& cube_samples() const {
        std::call_once(cube_once, [&] { cube = make_cube_samples(n, metric, cfg.samples, cfg.seed, kCubeStream, *table); });
        return cube;
    }

    MassEstimate base_estimate() const {
        MassEstimate e;
        e.strategy = strategy;
        e.seed = cfg.seed;
        if (strategy == Strategy::monte_carlo)
            e.samples = cfg.samples;
        else
            e.nodes = cfg.nodes_per_axis;
        return e;
    }

    MassEstimate evaluate(double r) const {
        if (!(r >= 0.0) || !std::isfinite(r))
            throw RangeError("ball radius must be finite and non-negative");
        MassEstimate e = base_estimate();
        if (r == 0.0)
            return e;
        if (r >= max_radius(n, metric)) {
            e.value = full;
            return e;
        }
        if (strategy == Strategy::tensor)
            e.value = tensor_mass(r);
        else
            monte_carlo_mass(r, e);
        e.value = std::clamp(e.value, 0.0, full);
        return e;
    }

    void monte_carlo_mass(double r, MassEstimate& e) const {
        const bool use_ball = metric == Metric::euclidean ? r <= 2.0 : r <= kPi;
        std::vector<Moments> parts;
        double scale = 0.0;
        if (use_ball) {
            const auto& chunks = ball_samples();
            parts.resize(chunks.size());
            const double radius = metric == Metric::euclidean ? 0.5 * r : r;
            scale = unit_ball_volume(n) * std::pow(radius, static_cast<double>(n));
            run_chunks(chunks.size(), [&](std::size_t c) {
                const BallChunk& ch = chunks[c];
                std::vector<double> s(ch.u.size()), co(ch.u.size()), f(ch.len);
                if (metric == Metric::euclidean) {
                    for (std::size_t i = 0; i < s.size(); ++i)
                        s[i] = radius * ch.u[i];
                    table->clip_and_complement(s, co, kClip);
                } else {
                    for (std::size_t i = 0; i < s.size(); ++i) {
                        const double half = 0.5 * (radius * ch.u[i]);
                        s[i] = std::sin(half);
                        co[i] = std::cos(half);
                    }
                }
                const kernels::HalfAngleBatch batch{n, ch.len, ch.len, s, co};
                table->weyl_density(batch, f);
                if (metric == Metric::euclidean)
                    table->apply_arcsine_jacobian(batch, f);
                parts[c] = Moments::of(f);
            });
        } else {
            const auto& chunks = cube_samples();
            parts.resize(chunks.size());
            const double level = metric == Metric::euclidean ? 0.25 * r * r : r * r;
            scale = std::pow(2.0 * kPi, static_cast<double>(n));
            run_chunks(chunks.size(), [&](std::size_t c) {
                const CubeChunk& ch = chunks[c];
                std::vector<double> f(ch.density.size());
                for (std::size_t p = 0; p < f.size(); ++p)
                    f[p] = ch.level[p] <= level ? ch.density[p] : 0.0;
                parts[c] = Moments::of(f);
            });
        }
        Moments total;
        for (const auto& p : parts)
            total.merge(p);
        e.value = scale * total.mean;
        e.std_error = scale * total.std_error_of_mean();
    }

    double tensor_mass(double r) const {
        const bool chordal = metric == Metric::euclidean;
        const Region reg{chordal, chordal ? 0.25 * r * r : r * r, chordal ? 1.0 : kPi * kPi};
        const double level = reg.level;
        if (n == 1)
            return 2.0 * reg.width(level);
        if (n == 2) {
            // Inner integral of 2 - 2 cos(t2 - t1) over [-a, a].
            return 2.0 * panel_integral(panel_edges(reg, level, 1), rule, [&](double t1) {
                       const double a = reg.width(level - reg.cost(t1));
                       return 4.0 * a - 4.0 * std::sin(a) * std::cos(t1);
                   });
        }
        // The density is invariant under theta -> -theta, so theta_1 >= 0 and
        // the theta_2 fold cover everything twice.
        return 2.0 * panel_integral(panel_edges(reg, level, 2), rule, [&](double t1) {
                   const double rest = level - reg.cost(t1);
                   return panel_integral(panel_edges(reg, rest, 1), rule, [&](double t2) {
                       const double a = reg.width(rest - reg.cost(t2));
                       return slice3(t1, t2, a) + slice3(t1, -t2, a);
                   });
               });
    }
};

BallMassIntegrator::BallMassIntegrator(std::size_t n, Metric metric, IntegrationConfig cfg,
                                       const kernels::KernelTable& table) {
    if (n == 0)
        throw DimensionError("ball mass: n must be at least 1");
    cfg.validate();
    impl_ = std::make_unique<Impl>(n, metric, cfg, table);
}

BallMassIntegrator::~BallMassIntegrator() = default;
BallMassIntegrator::BallMassIntegrator(BallMassIntegrator&&) noexcept = default;
BallMassIntegrator& BallMassIntegrator::operator=(BallMassIntegrator&&) noexcept = default;

MassEstimate BallMassIntegrator::operator()(double r) const { return impl_->evaluate(r); }
std::size_t BallMassIntegrator::dim() const noexcept { return impl_->n; }
Metric BallMassIntegrator::metric() const noexcept { return impl_->metric; }
Strategy BallMassIntegrator::strategy() const noexcept { return impl_->strategy; }
const IntegrationConfig& BallMassIntegrator::config() const noexcept { return impl_->cfg; }

MassEstimate ball_mass(std::size_t n, double r, Metric metric, const IntegrationConfig& cfg,
                       const kernels::KernelTable& table) {
    return BallMassIntegrator(n, metric, cfg, table)(r);
}

double ball_volume_fraction(std::size_t n, double r, Metric metric, const IntegrationConfig& cfg,
                            const kernels::KernelTable& table) {
    return std::clamp(ball_mass(n, r, metric, cfg, table).value / total_mass(n), 0.0, 1.0);
}

MassEstimate full_domain_mass_mc(std::size_t n, const IntegrationConfig& cfg, const kernels::KernelTable& table) {
    if (n == 0)
        throw DimensionError("full-domain mass: n must be at least 1");
    cfg.validate();
    const auto chunks = make_cube_samples(n, Metric::riemannian, cfg.samples, cfg.seed, kNormalizerStream, table);
    std::vector<Moments> parts(chunks.size());
    for (std::size_t c = 0; c < chunks.size(); ++c)
        parts[c] = Moments::of(chunks[c].density);
    Moments total;
    for (const auto& p : parts)
        total.merge(p);
    const double scale = std::pow(2.0 * kPi, static_cast<double>(n));
    MassEstimate e;
    e.value = scale * total.mean;
    e.std_error = scale * total.std_error_of_mean();
    e.strategy = Strategy::monte_carlo;
    e.samples = cfg.samples;
    e.seed = cfg.seed;
    return e;
}

} // namespace upb
