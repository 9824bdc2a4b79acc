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

// Weyl eigenvalue density on U(n) and its integrals over Euclidean and
// Riemannian balls around the identity, expressed in eigenangle space.

#include "upb/kernels.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace upb {

enum class Metric { euclidean, riemannian };
enum class Strategy { automatic, tensor, monte_carlo };

std::string_view to_string(Metric m) noexcept;
std::string_view to_string(Strategy s) noexcept;
std::optional<Metric> parse_metric(std::string_view text) noexcept;
/// Accepts "auto", "tensor", "mc" and "monte-carlo".
std::optional<Strategy> parse_strategy(std::string_view text) noexcept;

/// Eigenangles theta_1..theta_n, each in [-pi, pi).
class AnglePoint {
  public:
    explicit AnglePoint(std::vector<double> angles);

    std::size_t dim() const noexcept { return angles_.size(); }
    std::span<const double> angles() const noexcept { return angles_; }

  private:
    std::vector<double> angles_;
};

struct IntegrationConfig {
    Strategy strategy = Strategy::automatic;
    std::uint64_t samples = 1'000'000;
    std::size_t nodes_per_axis = 200;
    std::uint64_t seed = 20030501;
    double rel_tol = 1e-4;
    std::size_t max_refinements = 12;

    /// Throws ConfigError unless samples >= 1000, nodes_per_axis >= 8 and
    /// 0 < rel_tol < 0.1.
    void validate() const;

    /// `automatic` becomes tensor for n <= 3 and Monte Carlo above.
    Strategy resolve(std::size_t n) const noexcept;
};

struct MassEstimate {
    double value = 0.0;
    double std_error = 0.0; ///< zero for deterministic quadrature
    Strategy strategy = Strategy::tensor;
    std::uint64_t samples = 0;
    std::size_t nodes = 0;
    std::uint64_t seed = 0;
};

/// prod_{j<k} |e^{i theta_j} - e^{i theta_k}|^2; 1 for n = 1.
double weyl_density(const AnglePoint& p);

/// Full-domain integral of the density, (2 pi)^n n!. Throws RangeError when it
/// does not fit in a double; use log_total_mass there.
double total_mass(std::size_t n);
double log_total_mass(std::size_t n);

/// Largest radius the ball can usefully have: 2 sqrt(n) (chordal) or
/// pi sqrt(n) (geodesic). Beyond it the ball is all of U(n).
double max_radius(std::size_t n, Metric metric);

/// Evaluates r -> ball mass for one (n, metric, config). Monte Carlo uses one
/// canonical sample set per seed for every radius (common random numbers);
/// tensor quadrature uses one fixed node set. Either way the map is a
/// deterministic function of r. Safe to call concurrently.
class BallMassIntegrator {
  public:
    BallMassIntegrator(std::size_t n, Metric metric, IntegrationConfig cfg,
                       const kernels::KernelTable& table = kernels::active());
    ~BallMassIntegrator();
    BallMassIntegrator(BallMassIntegrator&&) noexcept;
    BallMassIntegrator& operator=(BallMassIntegrator&&) noexcept;

    /// Mass of D1 intersected with the ball of radius r; clamped to
    /// [0, total_mass(n)].
    MassEstimate operator()(double r) const;

    std::size_t dim() const noexcept;
    Metric metric() const noexcept;
    Strategy strategy() const noexcept; ///< resolved, never automatic
    const IntegrationConfig& config() const noexcept;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

MassEstimate ball_mass(std::size_t n, double r, Metric metric, const IntegrationConfig& cfg,
                       const kernels::KernelTable& table = kernels::active());

/// ball_mass / total_mass, in [0, 1].
double ball_volume_fraction(std::size_t n, double r, Metric metric, const IntegrationConfig& cfg,
                            const kernels::KernelTable& table = kernels::active());

/// Plain Monte Carlo over the cube [-pi, pi)^n with no clamping. Independent
/// check on the closed-form normalizer.
MassEstimate full_domain_mass_mc(std::size_t n, const IntegrationConfig& cfg,
                                 const kernels::KernelTable& table = kernels::active());

} // namespace upb
