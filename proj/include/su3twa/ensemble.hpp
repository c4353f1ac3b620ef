// Copyright 2026 The su3twa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "su3twa/algebra.hpp"
#include "su3twa/dynamics.hpp"
#include "su3twa/models.hpp"
#include "su3twa/observables.hpp"
#include "su3twa/wigner.hpp"

namespace su3twa {

/// Weyl symbol of an observable evaluated at a phase-space point. Linear
/// on-site operators use direct substitution; cross-site products multiply
/// single-site symbols. SU2 quadratic symbols use the samples directly,
/// since the Gaussian is matched to the symmetrized second moments.
double observable_weyl(ObservableKind kind, const ModelSpec& model,
                       std::span<const double> x,
                       const AlgebraTables& tables = algebra_tables());

/// Throws Unsupported if `kind` is not available for `rep`.
void check_observable(ObservableKind kind, Representation rep);

struct EnsembleConfig {
  std::size_t n_traj = 1;
  std::uint64_t master_seed = 0;
  IntegratorConfig integrator;
  /// Worker threads; 0 uses the OpenMP default. Results do not depend on it.
  int threads = 0;
  /// Runs with a larger fraction of NaN trajectories are rejected.
  double max_failure_fraction = 0.01;
};

struct RunResult {
  std::vector<double> times;
  std::vector<std::string> names;
  std::vector<std::vector<double>> mean;  // [observable][time]
  std::vector<std::vector<double>> sem;   // [observable][time]

  std::size_t n_traj = 0;
  std::size_t failed = 0;
  /// Largest Casimir drift seen over all trajectories; negative when not
  /// monitored (SU2).
  double casimir_max_drift = -1.0;
  bool snapped = false;
  /// Ordered key/value pairs written as CSV comment lines.
  std::vector<std::pair<std::string, std::string>> metadata;

  std::size_t column(const std::string& name) const;
};

/// FNV-1a over the model parameters; stable across runs and platforms with
/// the same floating point layout.
std::uint64_t model_hash(const ModelSpec& model);

/// Monte Carlo TWA ensemble. Trajectory k draws its initial point from
/// make_stream(master_seed, k); aggregation runs in trajectory order so the
/// result is bitwise independent of the number of threads.
RunResult run_ensemble(const ModelSpec& model, const InitialDistribution& init,
                       std::span<const ObservableKind> observables,
                       const EnsembleConfig& cfg,
                       std::span<const double> record_times,
                       const AlgebraTables& tables = algebra_tables());

/// Propagates the Gaussian mean directly. Valid only for uncoupled models
/// (linear flow) and observables linear in X; otherwise refused.
RunResult run_mean_trajectory(const ModelSpec& model,
                              const InitialDistribution& init,
                              std::span<const ObservableKind> observables,
                              const IntegratorConfig& integrator,
                              std::span<const double> record_times,
                              const AlgebraTables& tables = algebra_tables());

}  // namespace su3twa
