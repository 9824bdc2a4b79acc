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

// Packing-radius solves and the upper bounds on the optimal diversity sum
// Delta(n, m) derived from them.

#include "upb/kernels.hpp"
#include "upb/weyl_volume.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace upb {

enum class BoundId { b1, b2, b3 };

std::string_view to_string(BoundId id) noexcept;
std::optional<BoundId> parse_bound(std::string_view text) noexcept;

/// Metric whose packing radius a bound is built from: B1 and B2 use the
/// chordal radius, B3 the geodesic one.
Metric metric_of(BoundId id) noexcept;

struct SolverConfig {
    IntegrationConfig integration;
    double root_tol = 1e-6; ///< on the radius, not on the mass residual
    std::size_t max_bisection_steps = 200;

    void validate() const;
};

struct SolveDiagnostics {
    Strategy strategy = Strategy::tensor;
    std::size_t bisection_steps = 0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    std::size_t refinements = 0;
    std::uint64_t samples_used = 0;
    std::size_t nodes_used = 0;
    MassEstimate mass_at_root;
    /// |Q(nodes) - Q(nodes/2)| / Q(nodes) at the root; tensor strategy only.
    double quadrature_rel_change = 0.0;
    /// One-sigma radius uncertainty: Monte Carlo error mapped through the
    /// slope of the mass, plus half the final bracket.
    double r0_uncertainty = 0.0;
};

struct RadiusSolution {
    double r0 = 0.0;
    SolveDiagnostics diagnostics;
};

/// Radius at which m equal balls exactly exhaust the volume of U(n):
/// m * ball_mass(n, r) = total_mass(n). Bisection on [0, max_radius(n)].
/// Monte Carlo solves restart with doubled samples when the evaluated masses
/// are not monotone in r; tensor solves double the node count while the
/// half-resolution check disagrees by more than rel_tol.
RadiusSolution solve_r0(std::size_t n, std::size_t m, Metric metric, const SolverConfig& cfg,
                        const kernels::KernelTable& table = kernels::active());

/// min(1, sqrt(r^2/n - r^4/(4 n^2))); 1 once r^2 >= 2n.
double b1_of_r(std::size_t n, double r);

/// sin(min(pi/2, sqrt(pi^2 k/n + (4/n) asin^2 sqrt(alpha)))) with
/// k = floor(r^2/4), alpha = r^2/4 - k.
double b2_of_r(std::size_t n, double r);

/// The same expression without the pi/2 cap. Not a valid bound once the
/// argument passes pi/2; used to locate the B1/B2 crossover.
double b2_unclamped_of_r(std::size_t n, double r);

/// sin(min(pi/2, r / sqrt(n))).
double b3_of_r(std::size_t n, double r);

double bound_of_r(BoundId id, std::size_t n, double r);

struct BoundResult {
    std::size_t n = 0;
    std::size_t m = 0;
    BoundId bound = BoundId::b1;
    Metric metric = Metric::euclidean;
    double r0 = 0.0;
    double value = 0.0;
    double std_error_hint = 0.0;
    std::string fingerprint;
    SolveDiagnostics diagnostics;
};

/// "n:m:metric:strategy:samples:nodes:seed:root_tol" with the strategy resolved.
std::string config_fingerprint(std::size_t n, std::size_t m, Metric metric, const SolverConfig& cfg);

/// Turns an already solved radius into a bound record.
BoundResult bound_from_radius(BoundId id, std::size_t n, std::size_t m, const RadiusSolution& sol,
                              const SolverConfig& cfg);

BoundResult bound_b1(std::size_t n, std::size_t m, const SolverConfig& cfg,
                     const kernels::KernelTable& table = kernels::active());
BoundResult bound_b2(std::size_t n, std::size_t m, const SolverConfig& cfg,
                     const kernels::KernelTable& table = kernels::active());
BoundResult bound_b3(std::size_t n, std::size_t m, const SolverConfig& cfg,
                     const kernels::KernelTable& table = kernels::active());
BoundResult compute_bound(BoundId id, std::size_t n, std::size_t m, const SolverConfig& cfg,
                          const kernels::KernelTable& table = kernels::active());

/// Radius where b1_of_r and b2_unclamped_of_r cross below r = sqrt(2n).
/// B1 is the smaller of the two below it and B2 above. nullopt when the
/// difference never changes sign. Requires n >= 2.
std::optional<double> crossover_radius(std::size_t n);

/// Known optimal diversity sums; nullopt outside the tabulated cases.
std::optional<double> exact_delta(std::size_t n, std::size_t m);

struct DistanceEnvelope {
    double lower = 0.0;
    double upper = 0.0;
};

/// Bounds on the geodesic distance between two unitaries at chordal distance d.
DistanceEnvelope euclidean_riemannian_envelope(std::size_t n, double d);

struct AsymptoticLowerBound {
    double value = 0.0;
    double r0 = 0.0;
    /// Always set: the formula is a large-m asymptotic, not a finite-m guarantee.
    bool heuristic = true;
};

/// sqrt(n) * r0^E(n, m) * (tau + 1)^(-1/n^2), tau being the kissing number in
/// dimension 2n^2 - 1 supplied by the caller.
AsymptoticLowerBound asymptotic_lower_bound(std::size_t n, std::size_t m, std::uint64_t tau, const SolverConfig& cfg,
                                            const kernels::KernelTable& table = kernels::active());

} // namespace upb
