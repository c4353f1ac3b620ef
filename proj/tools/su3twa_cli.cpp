// Copyright 2026 The su3twa Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Talks to the engine exclusively through the C API.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "su3twa/su3twa.h"

namespace {

struct Overrides {
  std::string config;
  std::string out;
  std::optional<unsigned long long> seed;
  std::optional<unsigned long long> ntraj;
  std::optional<double> dt;
  std::optional<int> threads;
};

int report(su3twa_status st) {
  std::cerr << "su3twa: " << su3twa_last_error() << "\n";
  return static_cast<int>(st);
}

std::string number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int run_simulation(const std::string& experiment, const Overrides& o) {
  su3twa_config* cfg = nullptr;
  su3twa_status st = o.config.empty() ? su3twa_config_new(experiment.c_str(), &cfg)
                                      : su3twa_config_load(o.config.c_str(), &cfg);
  if (st != SU3TWA_OK) return report(st);

  std::vector<std::pair<std::string, std::string>> sets = {{"experiment", experiment}};
  if (o.seed) sets.emplace_back("seed", std::to_string(*o.seed));
  if (o.ntraj) sets.emplace_back("n_traj", std::to_string(*o.ntraj));
  if (o.dt) sets.emplace_back("dt", number(*o.dt));
  if (o.threads) sets.emplace_back("threads", std::to_string(*o.threads));
  if (!o.out.empty()) sets.emplace_back("output", o.out);
  for (const auto& [k, v] : sets) {
    st = su3twa_config_set(cfg, k.c_str(), v.c_str());
    if (st != SU3TWA_OK) {
      su3twa_config_free(cfg);
      return report(st);
    }
  }

  su3twa_result* result = nullptr;
  st = su3twa_run(cfg, &result);
  if (st != SU3TWA_OK) {
    su3twa_config_free(cfg);
    return report(st);
  }
  const std::string path = su3twa_config_output(cfg);
  if (path.empty()) {
    std::cout << su3twa_result_csv(result);
  } else {
    st = su3twa_result_write_csv(result, path.c_str());
    if (st == SU3TWA_OK) std::cerr << "wrote " << path << "\n";
  }
  su3twa_result_free(result);
  su3twa_config_free(cfg);
  return st == SU3TWA_OK ? 0 : report(st);
}

int validate() {
  size_t needed = 0;
  su3twa_status st = su3twa_validate_algebra(nullptr, 0, &needed);
  std::string text(needed, '\0');
  st = su3twa_validate_algebra(text.data(), text.size(), &needed);
  text.resize(needed > 0 ? needed - 1 : 0);
  std::cout << text;
  if (st != SU3TWA_OK) return report(st);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SU(3) truncated Wigner dynamics of spin-one lattices"};
  app.set_version_flag("--version", std::string(su3twa_version()));
  app.require_subcommand(1);

  Overrides o;
  const std::vector<std::pair<std::string, std::string>> experiments = {
      {"single-spin", "single spin-one site: SU3 TWA, SU2 TWA and exact dynamics"},
      {"fully-connected", "fully connected spins: SU3/SU2 TWA plus exact for M <= 8"},
      {"bose-hubbard", "effective Bose-Hubbard quench on a periodic cubic lattice"},
      {"custom", "any lattice, representation and observable set from the config"},
  };
  std::vector<CLI::App*> subs;
  for (const auto& [name, help] : experiments) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", o.config, "config file (or a CSV written by an earlier run)");
    sub->add_option("--out", o.out, "CSV output path (default: stdout)");
    sub->add_option("--seed", o.seed, "master seed");
    sub->add_option("--ntraj", o.ntraj, "number of trajectories");
    sub->add_option("--dt", o.dt, "requested time step");
    sub->add_option("--threads", o.threads, "worker threads (0 = all)");
    subs.push_back(sub);
  }
  CLI::App* val = app.add_subcommand(
      "validate-algebra", "print and check the SU(3) structure constants");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : SU3TWA_ERR_CONFIG;
  }

  if (val->parsed()) return validate();
  for (std::size_t i = 0; i < subs.size(); ++i)
    if (subs[i]->parsed()) return run_simulation(experiments[i].first, o);
  return SU3TWA_ERR_CONFIG;
}
