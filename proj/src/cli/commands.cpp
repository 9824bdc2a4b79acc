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

#include "cli/cache.hpp"
#include "cli/output.hpp"

#include "upb/bounds.hpp"
#include "upb/constellation.hpp"
#include "upb/errors.hpp"
#include "upb/kernels.hpp"
#include "upb/weyl_volume.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace upb::cli {

namespace {

constexpr double kPi = std::numbers::pi;

// Flags shared by the solver-backed commands.
struct Common {
    std::size_t n = 0;
    std::size_t m = 0;
    std::string method = "all";
    std::optional<std::string> metric;
    std::string strategy = "auto";
    std::uint64_t samples = IntegrationConfig{}.samples;
    std::size_t nodes = IntegrationConfig{}.nodes_per_axis;
    std::uint64_t seed = IntegrationConfig{}.seed;
    double root_tol = SolverConfig{}.root_tol;
    std::string format = "table";
    std::optional<std::string> cache_dir;
    bool no_cache = false;
    bool no_timestamp = false;
    std::optional<std::string> out;
};

enum : unsigned { kNM = 1, kMethod = 2, kSolver = 4, kOut = 8 };

void add_common(CLI::App* app, Common& c, unsigned what) {
    if (what & kNM) {
        app->add_option("--n", c.n, "matrix dimension n >= 1")->required();
        app->add_option("--m", c.m, "constellation size m >= 2")->required();
    }
    if (what & kMethod) {
        app->add_option("--method", c.method, "b1, b2, b3 or all");
        app->add_option("--metric", c.metric, "keep only bounds built on this metric (euclidean, riemannian)");
    }
    if (what & kSolver) {
        app->add_option("--strategy", c.strategy, "auto, tensor or mc");
        app->add_option("--samples", c.samples, "Monte Carlo samples");
        app->add_option("--nodes", c.nodes, "tensor quadrature nodes per axis");
        app->add_option("--seed", c.seed, "random seed");
        app->add_option("--root-tol", c.root_tol, "bisection tolerance on r0");
        app->add_option("--cache-dir", c.cache_dir, "r0 cache directory (default $UPB_CACHE_DIR or .upb-cache)");
        app->add_flag("--no-cache", c.no_cache, "neither read nor write the r0 cache");
    }
    app->add_option("--format", c.format, "table, csv or json");
    app->add_flag("--no-timestamp", c.no_timestamp, "omit timestamp and wall time");
    if (what & kOut)
        app->add_option("--out", c.out, "write output to this path");
}

Format format_of(const Common& c) {
    const auto f = parse_format(c.format);
    if (!f)
        throw ConfigError("unknown format '" + c.format + "' (expected table, csv or json)");
    return *f;
}

SolverConfig solver_config(const Common& c) {
    SolverConfig cfg;
    const auto s = parse_strategy(c.strategy);
    if (!s)
        throw ConfigError("unknown strategy '" + c.strategy + "' (expected auto, tensor or mc)");
    cfg.integration.strategy = *s;
    cfg.integration.samples = c.samples;
    cfg.integration.nodes_per_axis = c.nodes;
    cfg.integration.seed = c.seed;
    cfg.root_tol = c.root_tol;
    cfg.validate();
    return cfg;
}

void require_n_m(std::size_t n, std::size_t m) {
    if (n < 1)
        throw RangeError("n must be ≥ 1");
    if (m < 2)
        throw RangeError("m must be ≥ 2");
}

std::vector<BoundId> methods_of(const Common& c) {
    std::vector<BoundId> ids;
    if (c.method == "all") {
        ids = {BoundId::b1, BoundId::b2, BoundId::b3};
    } else {
        const auto id = parse_bound(c.method);
        if (!id)
            throw ConfigError("unknown method '" + c.method + "' (expected b1, b2, b3 or all)");
        ids = {*id};
    }
    if (c.metric) {
        const auto metric = parse_metric(*c.metric);
        if (!metric)
            throw ConfigError("unknown metric '" + *c.metric + "' (expected euclidean or riemannian)");
        std::erase_if(ids, [&](BoundId id) { return metric_of(id) != *metric; });
        if (ids.empty())
            throw ConfigError("method " + c.method + " is not built on the " + *c.metric + " metric");
    }
    return ids;
}

// Solves r0 through the cache. Lookups may run on any thread; stores happen on
// the caller's thread only.
class Solver {
  public:
    Solver(const Common& c, const kernels::KernelTable& table = kernels::active())
        : cfg_(solver_config(c)), table_(&table) {
        if (!c.no_cache)
            cache_.emplace(RadiusCache::resolve_dir(c.cache_dir));
    }

    const SolverConfig& config() const { return cfg_; }

    struct Outcome {
        RadiusSolution solution;
        bool from_cache = false;
    };

    Outcome solve(std::size_t n, std::size_t m, Metric metric) const {
        const std::string key = config_fingerprint(n, m, metric, cfg_);
        if (cache_) {
            if (const auto hit = cache_->lookup(key)) {
                Outcome o;
                o.from_cache = true;
                o.solution.r0 = hit->r0;
                auto& d = o.solution.diagnostics;
                d.strategy = cfg_.integration.resolve(n);
                d.r0_uncertainty = hit->r0_uncertainty;
                d.samples_used = hit->samples_used;
                d.nodes_used = hit->nodes_used;
                return o;
            }
        }
        return Outcome{solve_r0(n, m, metric, cfg_, *table_), false};
    }

    void remember(std::size_t n, std::size_t m, Metric metric, const Outcome& o) {
        if (!cache_ || o.from_cache)
            return;
        CacheEntry e;
        e.key = config_fingerprint(n, m, metric, cfg_);
        e.r0 = o.solution.r0;
        e.r0_uncertainty = o.solution.diagnostics.r0_uncertainty;
        e.samples_used = o.solution.diagnostics.samples_used;
        e.nodes_used = o.solution.diagnostics.nodes_used;
        e.timestamp = utc_timestamp();
        cache_->store(e);
    }

    RadiusSolution solve_and_remember(std::size_t n, std::size_t m, Metric metric) {
        const Outcome o = solve(n, m, metric);
        remember(n, m, metric, o);
        return o.solution;
    }

  private:
    SolverConfig cfg_;
    const kernels::KernelTable* table_;
    std::optional<RadiusCache> cache_;
};

std::uint64_t as_int(std::uint64_t v) { return v; }

const std::vector<std::string> kBoundColumns = {"n",     "m",         "method",   "metric",  "r0",
                                                "value", "std_error", "strategy", "samples", "seed"};

std::vector<Cell> bound_row(const BoundResult& b, const SolverConfig& cfg) {
    const auto& d = b.diagnostics;
    const std::uint64_t work = d.strategy == Strategy::monte_carlo ? d.samples_used : d.nodes_used;
    return {as_int(b.n),
            as_int(b.m),
            std::string(to_string(b.bound)),
            std::string(to_string(b.metric)),
            b.r0,
            b.value,
            b.std_error_hint,
            std::string(to_string(d.strategy)),
            as_int(work),
            as_int(cfg.integration.seed)};
}

void solver_parameters(RunRecord& rec, const SolverConfig& cfg) {
    const auto& ic = cfg.integration;
    rec.parameters.emplace_back("strategy", std::string(to_string(ic.strategy)));
    rec.parameters.emplace_back("samples", as_int(ic.samples));
    rec.parameters.emplace_back("nodes", as_int(ic.nodes_per_axis));
    rec.parameters.emplace_back("seed", as_int(ic.seed));
    rec.parameters.emplace_back("root_tol", cfg.root_tol);
}

// Opens the destination before any work so an unwritable path fails fast.
class Sink {
  public:
    Sink(const std::optional<std::string>& path, std::ostream& fallback) : out_(&fallback) {
        if (path) {
            file_.open(*path, std::ios::trunc);
            if (!file_)
                throw ConfigError("cannot open " + *path + " for writing");
            out_ = &file_;
        }
    }
    std::ostream& stream() { return *out_; }

  private:
    std::ofstream file_;
    std::ostream* out_;
};

class Stopwatch {
  public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void finish(RunRecord& rec, const Common& c, const Stopwatch& sw, Format f, std::ostream& dest, std::ostream& err) {
    if (!c.no_timestamp) {
        rec.timestamp = utc_timestamp();
        rec.wall_time_s = sw.seconds();
    }
    dest << render(rec, f);
    if (f == Format::csv)
        for (const auto& note : rec.notes)
            err << note << '\n';
}

// ---------------------------------------------------------------------------

int cmd_bound(const Common& c, std::ostream& out, std::ostream& err) {
    Stopwatch sw;
    const Format f = format_of(c);
    require_n_m(c.n, c.m);
    const auto ids = methods_of(c);
    Solver solver(c);
    Sink sink(c.out, out);

    RunRecord rec;
    rec.command = "bound";
    rec.parameters = {{"n", as_int(c.n)}, {"m", as_int(c.m)}, {"method", c.method}};
    solver_parameters(rec, solver.config());
    rec.columns = kBoundColumns;

    std::map<Metric, RadiusSolution> radii;
    for (BoundId id : ids) {
        const Metric metric = metric_of(id);
        if (!radii.count(metric))
            radii[metric] = solver.solve_and_remember(c.n, c.m, metric);
        rec.rows.push_back(bound_row(bound_from_radius(id, c.n, c.m, radii[metric], solver.config()), solver.config()));
    }
    if (const auto exact = exact_delta(c.n, c.m))
        rec.notes.push_back("known optimum Delta(" + std::to_string(c.n) + ", " + std::to_string(c.m) +
                            ") = " + format_number(*exact, f));
    finish(rec, c, sw, f, sink.stream(), err);
    return 0;
}

struct TableRow {
    std::size_t m;
    double b1;
    double b2;
};

// Reference values for n = 2 as published.
constexpr std::array<TableRow, 8> kTableReference = {{{24, 0.7598, 0.7794},
                                                      {48, 0.6603, 0.6734},
                                                      {64, 0.6131, 0.6235},
                                                      {80, 0.5932, 0.6026},
                                                      {100, 0.5578, 0.5654},
                                                      {120, 0.5425, 0.5496},
                                                      {128, 0.5347, 0.5415},
                                                      {1000, 0.3270, 0.3285}}};
constexpr double kTableTolerance = 0.005;

int cmd_table(const Common& c, std::ostream& out, std::ostream& err) {
    Stopwatch sw;
    const Format f = format_of(c);
    Solver solver(c);
    Sink sink(c.out, out);

    RunRecord rec;
    rec.command = "table";
    rec.parameters = {{"n", std::uint64_t{2}}};
    solver_parameters(rec, solver.config());
    rec.columns = {"m", "method", "r0", "computed", "reference", "deviation", "within_tolerance"};
    std::size_t within = 0;
    for (const auto& row : kTableReference) {
        const RadiusSolution sol = solver.solve_and_remember(2, row.m, Metric::euclidean);
        for (BoundId id : {BoundId::b1, BoundId::b2}) {
            const double ref = id == BoundId::b1 ? row.b1 : row.b2;
            const double v = bound_from_radius(id, 2, row.m, sol, solver.config()).value;
            const double dev = std::abs(v - ref);
            within += dev <= kTableTolerance;
            rec.rows.push_back({as_int(row.m), std::string(to_string(id)), sol.r0, v, ref, dev,
                                std::string(dev <= kTableTolerance ? "yes" : "no")});
        }
    }
    rec.notes.push_back(std::to_string(within) + " of " + std::to_string(2 * kTableReference.size()) +
                        " deviations within " + format_number(kTableTolerance, Format::table));
    finish(rec, c, sw, f, sink.stream(), err);
    return 0;
}

struct SweepRange {
    std::size_t start = 2;
    std::size_t end = 0;
    std::optional<std::size_t> step;
    std::optional<double> factor;
};

std::vector<std::size_t> sweep_values(const SweepRange& r) {
    if (r.start < 2)
        throw RangeError("m must be ≥ 2");
    if (r.end < r.start)
        throw RangeError("--m-end must be at least --m-start");
    if (r.step && r.factor)
        throw ConfigError("--m-step and --m-factor are mutually exclusive");
    std::vector<std::size_t> ms;
    if (r.factor) {
        if (!(*r.factor > 1.0))
            throw ConfigError("--m-factor must exceed 1");
        for (std::size_t m = r.start; m <= r.end;) {
            ms.push_back(m);
            const double next = std::round(static_cast<double>(m) * *r.factor);
            m = std::max(m + 1, static_cast<std::size_t>(next));
        }
    } else {
        const std::size_t step = r.step.value_or(1);
        if (step == 0)
            throw ConfigError("--m-step must be positive");
        for (std::size_t m = r.start; m <= r.end; m += step)
            ms.push_back(m);
    }
    return ms;
}

int cmd_sweep(const Common& c, const SweepRange& range, std::ostream& out, std::ostream& err) {
    Stopwatch sw;
    const Format f = format_of(c);
    if (c.n < 1)
        throw RangeError("n must be ≥ 1");
    const auto ids = methods_of(c);
    const auto ms = sweep_values(range);
    Solver solver(c);
    Sink sink(c.out, out);

    std::vector<Metric> metrics;
    for (BoundId id : ids)
        if (std::find(metrics.begin(), metrics.end(), metric_of(id)) == metrics.end())
            metrics.push_back(metric_of(id));

    // Cells are independent solves; workers fill fixed slots and the cache is
    // written afterwards from this thread.
    struct Cell {
        std::size_t m;
        Metric metric;
        Solver::Outcome outcome;
        std::exception_ptr error;
    };
    std::vector<Cell> cells;
    for (std::size_t m : ms)
        for (Metric metric : metrics)
            cells.push_back({m, metric, {}, nullptr});
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            try {
                cells[i].outcome = solver.solve(c.n, cells[i].m, cells[i].metric);
            } catch (...) {
                cells[i].error = std::current_exception();
            }
        }
    };
    const std::size_t workers =
        std::min<std::size_t>(cells.size(), std::max(1u, std::thread::hardware_concurrency()));
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 1; w < workers; ++w)
            pool.emplace_back(work);
        work();
    }
    for (const auto& cell : cells)
        if (cell.error)
            std::rethrow_exception(cell.error);

    RunRecord rec;
    rec.command = "sweep";
    rec.parameters = {{"n", as_int(c.n)},
                      {"m_start", as_int(range.start)},
                      {"m_end", as_int(range.end)},
                      {"method", c.method}};
    solver_parameters(rec, solver.config());
    rec.columns = kBoundColumns;
    std::size_t k = 0;
    for (std::size_t m : ms) {
        std::map<Metric, RadiusSolution> radii;
        for (Metric metric : metrics) {
            solver.remember(c.n, m, metric, cells[k].outcome);
            radii[metric] = cells[k++].outcome.solution;
        }
        for (BoundId id : ids)
            rec.rows.push_back(
                bound_row(bound_from_radius(id, c.n, m, radii[metric_of(id)], solver.config()), solver.config()));
    }
    finish(rec, c, sw, f, sink.stream(), err);
    return 0;
}

void append_bound_gaps(RunRecord& rec, Solver& solver, std::size_t n, std::size_t m, double achieved) {
    std::map<Metric, RadiusSolution> radii;
    for (BoundId id : {BoundId::b1, BoundId::b2, BoundId::b3}) {
        const Metric metric = metric_of(id);
        if (!radii.count(metric))
            radii[metric] = solver.solve_and_remember(n, m, metric);
        const double v = bound_from_radius(id, n, m, radii[metric], solver.config()).value;
        rec.rows.push_back({std::string(to_string(id)), v, std::monostate{}, std::monostate{}, v - achieved});
    }
}

void append_scores(RunRecord& rec, const Constellation& v) {
    const PairScore sum = diversity_sum(v);
    const PairScore prod = diversity_product(v);
    rec.rows.push_back({std::string("diversity_sum"), sum.value, as_int(sum.first), as_int(sum.second),
                        std::monostate{}});
    rec.rows.push_back({std::string("diversity_product"), prod.value, as_int(prod.first), as_int(prod.second),
                        std::monostate{}});
    rec.rows.push_back({std::string("chordal_packing_radius"), chordal_packing_radius(v), std::monostate{},
                        std::monostate{}, std::monostate{}});
    if (prod.value == 0.0)
        rec.notes.push_back("not fully diverse: det(A" + std::to_string(prod.first) + " - A" +
                            std::to_string(prod.second) + ") = 0");
}

const std::vector<std::string> kScoreColumns = {"quantity", "value", "first", "second", "gap"};

int cmd_eval(const Common& c, const std::string& path, bool with_bounds, std::ostream& out, std::ostream& err) {
    Stopwatch sw;
    const Format f = format_of(c);
    const Constellation v = load_constellation(path);
    Sink sink(c.out, out);

    RunRecord rec;
    rec.command = "eval";
    rec.parameters = {{"file", path},
                      {"label", v.label()},
                      {"n", as_int(v.dim())},
                      {"m", as_int(v.size())}};
    rec.columns = kScoreColumns;
    append_scores(rec, v);
    if (with_bounds) {
        Solver solver(c);
        solver_parameters(rec, solver.config());
        append_bound_gaps(rec, solver, v.dim(), v.size(), diversity_sum(v).value);
    }
    finish(rec, c, sw, f, sink.stream(), err);
    return 0;
}

int cmd_search(const Common& c, std::size_t trials, const std::string& objective_name, const std::string& save,
               std::ostream& out, std::ostream& err) {
    Stopwatch sw;
    const Format f = format_of(c);
    require_n_m(c.n, c.m);
    if (trials < 1)
        throw RangeError("trials must be ≥ 1");
    Objective objective;
    if (objective_name == "sum")
        objective = Objective::sum;
    else if (objective_name == "product")
        objective = Objective::product;
    else
        throw ConfigError("unknown objective '" + objective_name + "' (expected sum or product)");
    Solver solver(c);
    {
        std::ofstream probe(save, std::ios::app);
        if (!probe)
            throw ConfigError("cannot open " + save + " for writing");
    }

    const SearchResult res = random_search(c.n, c.m, trials, c.seed, objective);
    save_constellation(res.best, save);

    RunRecord rec;
    rec.command = "search";
    rec.parameters = {{"n", as_int(c.n)},
                      {"m", as_int(c.m)},
                      {"trials", as_int(trials)},
                      {"objective", objective_name},
                      {"out", save}};
    solver_parameters(rec, solver.config());
    rec.columns = kScoreColumns;
    rec.rows.push_back(
        {std::string("score"), res.score, std::monostate{}, std::monostate{}, std::monostate{}});
    append_scores(rec, res.best);
    append_bound_gaps(rec, solver, c.n, c.m, diversity_sum(res.best).value);
    finish(rec, c, sw, f, out, err);
    return 0;
}

// ---------------------------------------------------------------------------
// Self-test.

void negated_density(const kernels::HalfAngleBatch& in, std::span<double> out) {
    kernels::active().weyl_density(in, out);
    for (double& v : out)
        v = -v;
}

struct Check {
    std::string name;
    bool pass;
    std::string detail;
};

std::vector<Check> run_selftest(const kernels::KernelTable& table) {
    std::vector<Check> checks;
    auto add = [&](std::string name, bool pass, std::string detail) {
        checks.push_back({std::move(name), pass, std::move(detail)});
    };
    IntegrationConfig mc;
    mc.strategy = Strategy::monte_carlo;

    for (std::size_t n = 1; n <= 3; ++n) {
        const double est = full_domain_mass_mc(n, mc, table).value;
        const double exact = total_mass(n);
        const double rel = std::abs(est - exact) / exact;
        add("normalizer n=" + std::to_string(n), rel <= 0.01,
            "relative error " + format_number(rel, Format::table));
    }

    {
        Rng rng(mc.seed);
        std::uniform_int_distribution<std::size_t> pick_n(1, 4), pick_m(2, 8);
        std::size_t bad = 0;
        for (int t = 0; t < 100; ++t) {
            const std::size_t n = pick_n(rng);
            const std::size_t m = pick_m(rng);
            std::vector<UnitaryMatrix> members;
            for (std::size_t i = 0; i < m; ++i)
                members.push_back(haar_sample(n, rng));
            const Constellation v(std::move(members));
            bad += diversity_product(v).value > diversity_sum(v).value + 1e-12;
        }
        add("product <= sum on 100 constellations", bad == 0, std::to_string(bad) + " violations");
    }

    {
        Rng rng(mc.seed + 1);
        std::uniform_int_distribution<std::size_t> pick_n(1, 5);
        std::size_t bad = 0;
        for (int t = 0; t < 200; ++t) {
            const std::size_t n = pick_n(rng);
            const UnitaryMatrix a = haar_sample(n, rng);
            const UnitaryMatrix b = haar_sample(n, rng);
            const auto env = euclidean_riemannian_envelope(n, chordal_distance(a, b));
            const double g = riemannian_distance(a, b);
            bad += !(env.lower <= g + 1e-12 && g <= env.upper + 1e-9);
        }
        add("distance envelope on 200 pairs", bad == 0, std::to_string(bad) + " violations");
    }

    {
        SolverConfig cfg;
        double worst = 0.0;
        for (std::size_t m : {2, 3, 5, 8, 13, 64})
            for (BoundId id : {BoundId::b1, BoundId::b2, BoundId::b3})
                worst = std::max(worst, std::abs(compute_bound(id, 1, m, cfg, table).value - std::sin(kPi / m)));
        add("n=1 bounds equal sin(pi/m)", worst <= 1e-6, "max deviation " + format_number(worst, Format::table));
        const double arc = ball_mass(1, std::sqrt(2.0), Metric::euclidean, cfg.integration, table).value;
        add("n=1 arc mass at r=sqrt(2)", std::abs(arc - kPi) <= 1e-9,
            "deviation " + format_number(std::abs(arc - kPi), Format::table));
    }
    return checks;
}

int cmd_selftest(const Common& c, const std::string& fault, std::ostream& out, std::ostream& err) {
    Stopwatch sw;
    const Format f = format_of(c);
    kernels::KernelTable table = kernels::active();
    if (fault == "density-sign")
        table.weyl_density = &negated_density;
    else if (!fault.empty())
        throw ConfigError("unknown fault '" + fault + "'");

    RunRecord rec;
    rec.command = "selftest";
    rec.parameters = {{"isa", std::string(kernels::to_string(table.isa))}};
    rec.columns = {"check", "status", "detail"};
    std::size_t failed = 0;
    for (const auto& ch : run_selftest(table)) {
        failed += !ch.pass;
        rec.rows.push_back({ch.name, std::string(ch.pass ? "pass" : "FAIL"), ch.detail});
    }
    rec.notes.push_back(failed ? std::to_string(failed) + " invariant(s) failed" : "all invariants hold");
    finish(rec, c, sw, f, out, err);
    return failed ? 2 : 0;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Upper bounds on the diversity of unitary space-time constellations", "upb"};
    app.require_subcommand(1);

    Common bound_c, table_c, sweep_c, eval_c, search_c, self_c;

    auto* bound = app.add_subcommand("bound", "bounds B1, B2, B3 for one (n, m)");
    add_common(bound, bound_c, kNM | kMethod | kSolver | kOut);

    auto* table = app.add_subcommand("table", "recompute the n = 2 comparison of B1 and B2 against reference values");
    add_common(table, table_c, kSolver | kOut);

    SweepRange range;
    auto* sweep = app.add_subcommand("sweep", "bounds over a range of m, for plotting");
    sweep->add_option("--n", sweep_c.n, "matrix dimension n >= 1")->required();
    sweep->add_option("--m-start", range.start, "first m (default 2)");
    sweep->add_option("--m-end", range.end, "last m")->required();
    sweep->add_option("--m-step", range.step, "arithmetic step");
    sweep->add_option("--m-factor", range.factor, "geometric factor");
    sweep_c.format = "csv";
    add_common(sweep, sweep_c, kMethod | kSolver | kOut);

    std::string eval_path;
    bool eval_bounds = false;
    auto* eval = app.add_subcommand("eval", "score a constellation file");
    eval->add_option("file", eval_path, "constellation file")->required();
    eval->add_flag("--bounds", eval_bounds, "compare against B1, B2, B3 at the same (n, m)");
    add_common(eval, eval_c, kSolver | kOut);

    std::size_t trials = 1000;
    std::string objective = "sum";
    std::string save;
    auto* search = app.add_subcommand("search", "random search for a constellation");
    search->add_option("--n", search_c.n, "matrix dimension n >= 1")->required();
    search->add_option("--m", search_c.m, "constellation size m >= 2")->required();
    search->add_option("--trials", trials, "candidate draws");
    search->add_option("--objective", objective, "sum or product");
    search->add_option("--out", save, "where to save the best constellation")->required();
    add_common(search, search_c, kSolver);

    std::string fault;
    auto* self = app.add_subcommand("selftest", "fast invariant checks");
    self->add_option("--inject-fault", fault)->group("");
    add_common(self, self_c, 0);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*bound)
            return cmd_bound(bound_c, out, err);
        if (*table)
            return cmd_table(table_c, out, err);
        if (*sweep)
            return cmd_sweep(sweep_c, range, out, err);
        if (*eval)
            return cmd_eval(eval_c, eval_path, eval_bounds, out, err);
        if (*search)
            return cmd_search(search_c, trials, objective, save, out, err);
        if (*self)
            return cmd_selftest(self_c, fault, out, err);
    } catch (const NumericalFailure& e) {
        err << "numerical failure: " << e.what();
        if (const auto b = e.bracket())
            err << " (last bracket [" << format_number(b->lo, Format::json) << ", "
                << format_number(b->hi, Format::json) << "])";
        err << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

} // namespace upb::cli
