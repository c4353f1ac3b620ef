// Copyright 2026 The su3twa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "su3twa/algebra.hpp"
#include "su3twa/ensemble.hpp"
#include "su3twa/observables.hpp"
#include "su3twa/wigner.hpp"

namespace su3twa {

enum class Experiment { ValidateAlgebra, SingleSpin, FullyConnected, BoseHubbard, Custom };
enum class Lattice { Single, FullyConnected, Cubic };

const char* to_string(Experiment e);
const char* to_string(Lattice l);
std::optional<Experiment> experiment_from_string(std::string_view s);

/// Everything needed to reproduce a run. Optional fields fall back to
/// experiment-dependent defaults when the run is resolved.
struct RunConfig {
  Experiment experiment = Experiment::SingleSpin;

  // [model]
  std::vector<Representation> representations;
  std::optional<Lattice> lattice;
  std::optional<std::size_t> sites;  // M
  std::optional<std::size_t> side;   // L
  std::optional<double> coupling;    // J (bond prefactor before ordering)
  std::optional<double> jz_over_u;
  std::optional<double> jnz_over_u;
  double interaction = 1.0;          // U
  double chemical_potential = 0.0;   // mu
  std::array<double, 3> field{};     // B
  std::vector<ObservableKind> observables;

  // [init]
  std::optional<NamedState> state;
  std::optional<Matrix3c> density;

  // [run]
  std::optional<std::size_t> n_traj;
  std::uint64_t seed = 1;
  std::optional<double> dt;
  std::optional<double> t_final;
  std::size_t records = 200;
  std::string output;
  int threads = 0;
  double convergence_tol = 1e-4;
  std::optional<bool> exact;

  bool operator==(const RunConfig&) const = default;
};

/// Flat `key = value` lines grouped under [model], [init] and [run]; `#`
/// starts a comment. Keys before the first section may come from any
/// section. Unknown keys, malformed numbers and conflicting keys throw
/// Config errors naming the line.
RunConfig parse_config(std::string_view text);

/// Applies one key as if it appeared in the config (used for CLI overrides).
/// Cross-key checks (required keys per experiment, exclusive keys, density
/// validity). parse_config and resolve call it.
void validate_config(const RunConfig& cfg);

/// Sets one key with the parser's per-key validation. Cross-key checks are
/// deferred to validate_config so configs can be built incrementally.
void set_config_key(RunConfig& cfg, std::string_view key, std::string_view value);

/// Canonical text form; parse_config(render_config(c)) == c.
std::string render_config(const RunConfig& cfg);

/// Recovers the config embedded in a CSV produced by run_experiment.
RunConfig config_from_csv(std::string_view csv);

/// Parameters after defaults are applied.
struct ResolvedRun {
  Lattice lattice;
  std::size_t n_sites;
  double bond_weight_j;  // J entering the model builders
  double t_final;
  double dt;             // effective step, divides the record spacing
  std::size_t n_traj;
  std::vector<double> record_times;
  std::vector<Representation> representations;
  std::vector<ObservableKind> observables;
  bool exact;
  std::string units;
};

ResolvedRun resolve(const RunConfig& cfg);

/// Runs the configured experiment and returns one merged table; column names
/// are prefixed by method (su3_, su2_, exact_).
RunResult run_experiment(const RunConfig& cfg);

/// CSV per the output schema: `#` metadata lines, header, one row per time.
std::string render_csv(const RunResult& result);
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

struct AlgebraReport {
  std::string text;
  bool f_matches = false;
  bool d_matches = false;  // false when any tabulated d entry differs
  bool d888_trace_conserves = false;
  int exit_code = 0;
};

/// Recomputes f and d from trace identities, diffs them against the
/// tabulated values, checks normalization and the Jacobi identity, and
/// arbitrates the d_888 sign by Casimir conservation.
AlgebraReport validate_algebra();

}  // namespace su3twa
