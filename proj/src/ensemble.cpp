// Copyright 2026 The su3twa Authors
// SPDX-License-Identifier: Apache-2.0

#include "su3twa/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <exception>
#include <sstream>

#include <omp.h>

#include "su3twa/error.hpp"

namespace su3twa {

namespace {

const double kSqrt3 = std::sqrt(3.0);

struct Fnv1a {
  std::uint64_t state = 1469598103934665603ULL;
  template <class T>
  void add(const T& v) {
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &v, sizeof(T));
    for (unsigned char b : bytes) {
      state ^= b;
      state *= 1099511628211ULL;
    }
  }
};

std::string hex(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << v;
  return os.str();
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

bool is_linear(ObservableKind kind, Representation rep) {
  switch (kind) {
    case ObservableKind::SxMean:
      return true;
    case ObservableKind::SzSqPerSite:
    case ObservableKind::Energy:
      return rep == Representation::SU3;
    default:
      return false;
  }
}

}  // namespace

const char* to_string(ObservableKind kind) {
  switch (kind) {
    case ObservableKind::SxMean: return "sx";
    case ObservableKind::SzSqPerSite: return "szsq";
    case ObservableKind::RhoS: return "rho_s";
    case ObservableKind::Casimir1: return "casimir1";
    case ObservableKind::Casimir2: return "casimir2";
    case ObservableKind::Energy: return "energy";
  }
  return "?";
}

std::optional<ObservableKind> observable_from_string(std::string_view name) {
  for (auto k : {ObservableKind::SxMean, ObservableKind::SzSqPerSite,
                 ObservableKind::RhoS, ObservableKind::Casimir1,
                 ObservableKind::Casimir2, ObservableKind::Energy})
    if (name == to_string(k)) return k;
  return std::nullopt;
}

void check_observable(ObservableKind kind, Representation rep) {
  if ((kind == ObservableKind::Casimir1 || kind == ObservableKind::Casimir2) &&
      rep != Representation::SU3)
    fail(ErrorCode::Unsupported,
         std::string("observable '") + to_string(kind) + "' requires the su3 representation");
}

double observable_weyl(ObservableKind kind, const ModelSpec& model,
                       std::span<const double> x, const AlgebraTables& tables) {
  const Representation rep = model.representation();
  check_observable(kind, rep);
  const std::size_t d = dimension(rep);
  const std::size_t m = model.n_sites();
  if (x.size() != m * d)
    fail(ErrorCode::InvalidArgument, "observable_weyl: state does not match model");
  const double inv_m = 1.0 / static_cast<double>(m);
  switch (kind) {
    case ObservableKind::SxMean: {
      double s = 0.0;
      for (std::size_t n = 0; n < m; ++n) s += x[n * d];
      return s * inv_m;
    }
    case ObservableKind::SzSqPerSite: {
      double s = 0.0;
      if (rep == Representation::SU3) {
        for (std::size_t n = 0; n < m; ++n) s += (2.0 - kSqrt3 * x[n * d + 7]) / 3.0;
      } else {
        for (std::size_t n = 0; n < m; ++n) s += x[n * d + 2] * x[n * d + 2];
      }
      return s * inv_m;
    }
    case ObservableKind::RhoS: {
      // sum_{i != j} (X1_i X1_j + X2_i X2_j); the antisymmetric part of
      // S_i^+ S_j^- cancels in the full sum.
      double s1 = 0.0, s2 = 0.0, q = 0.0;
      for (std::size_t n = 0; n < m; ++n) {
        const double a = x[n * d], b = x[n * d + 1];
        s1 += a;
        s2 += b;
        q += a * a + b * b;
      }
      return (s1 * s1 + s2 * s2 - q) * inv_m * inv_m;
    }
    case ObservableKind::Casimir1:
    case ObservableKind::Casimir2: {
      const CasimirReport r = casimir_values(rep, x, tables);
      const auto& v = kind == ObservableKind::Casimir1 ? r.c1 : r.c2;
      double s = 0.0;
      for (double c : v) s += c;
      return s * inv_m;
    }
    case ObservableKind::Energy:
      return hamiltonian_weyl(model, x, rep == Representation::SU3);
  }
  return 0.0;
}

std::size_t RunResult::column(const std::string& name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) fail(ErrorCode::InvalidArgument, "no column named " + name);
  return static_cast<std::size_t>(it - names.begin());
}

std::uint64_t model_hash(const ModelSpec& model) {
  Fnv1a h;
  h.add(static_cast<int>(model.representation()));
  h.add(model.n_sites());
  for (const auto& s : model.sites()) {
    h.add(s.field);
    h.add(s.interaction);
    h.add(s.chemical_potential);
  }
  for (const auto& b : model.graph().bonds()) {
    h.add(b.a);
    h.add(b.b);
    h.add(b.weight);
  }
  return h.state;
}

RunResult run_ensemble(const ModelSpec& model, const InitialDistribution& init,
                       std::span<const ObservableKind> observables,
                       const EnsembleConfig& cfg,
                       std::span<const double> record_times,
                       const AlgebraTables& tables) {
  const Representation rep = model.representation();
  if (init.representation() != rep || init.n_sites() != model.n_sites())
    fail(ErrorCode::InvalidArgument,
         "initial distribution does not match the model representation or size");
  if (cfg.n_traj < 1) fail(ErrorCode::InvalidArgument, "n_traj must be >= 1");
  for (auto k : observables) check_observable(k, rep);

  const std::size_t n_obs = observables.size();
  const std::size_t n_times = record_times.size();
  const std::size_t n_traj = cfg.n_traj;
  const std::size_t n_vars = model.n_sites() * dimension(rep);
  const bool monitor = rep == Representation::SU3;

  std::vector<double> values(n_traj * n_obs * n_times, 0.0);
  std::vector<unsigned char> failed(n_traj, 0);
  std::vector<double> drift(n_traj, 0.0);
  bool snapped = false;

  std::exception_ptr error;
  const int threads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();

#pragma omp parallel num_threads(threads)
  {
    BlochFlow flow(model, tables);
    std::vector<double> x0(n_vars);
#pragma omp for schedule(dynamic, 1)
    for (std::size_t k = 0; k < n_traj; ++k) {
      try {
        RngEngine rng = make_stream(cfg.master_seed, k);
        init.draw(rng, x0);
        double* out = values.data() + k * n_obs * n_times;
        CasimirReport c0;
        if (monitor) c0 = casimir_values(rep, x0, tables);
        double worst = 0.0;
        const IntegrationStatus st = integrate_visit(
            flow, x0, cfg.integrator, record_times,
            [&](std::size_t r, double, std::span<const double> x) {
              for (std::size_t o = 0; o < n_obs; ++o)
                out[o * n_times + r] = observable_weyl(observables[o], model, x, tables);
              if (monitor)
                worst = std::max(worst, casimir_drift(c0, casimir_values(rep, x, tables)));
            });
        failed[k] = st.failed ? 1 : 0;
        drift[k] = worst;
        if (k == 0) snapped = st.snapped;
      } catch (...) {
#pragma omp critical(su3twa_ensemble_error)
        if (!error) error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);

  std::size_t n_failed = 0;
  for (auto f : failed) n_failed += f;
  const std::size_t n_ok = n_traj - n_failed;
  if (n_ok == 0) fail(ErrorCode::Numerical, "all trajectories failed (NaN/Inf)");
  if (static_cast<double>(n_failed) > cfg.max_failure_fraction * static_cast<double>(n_traj)) {
    std::ostringstream os;
    os << n_failed << " of " << n_traj << " trajectories failed, above the "
       << cfg.max_failure_fraction * 100.0 << "% limit";
    fail(ErrorCode::Numerical, os.str());
  }

  RunResult result;
  result.times.resize(n_times);
  const auto steps = record_steps(record_times, cfg.integrator.dt);
  for (std::size_t r = 0; r < n_times; ++r)
    result.times[r] = static_cast<double>(steps[r]) * cfg.integrator.dt;

  result.mean.assign(n_obs, std::vector<double>(n_times, 0.0));
  result.sem.assign(n_obs, std::vector<double>(n_times, 0.0));
  for (std::size_t o = 0; o < n_obs; ++o) {
    result.names.emplace_back(to_string(observables[o]));
    for (std::size_t r = 0; r < n_times; ++r) {
      double sum = 0.0;
      for (std::size_t k = 0; k < n_traj; ++k)
        if (!failed[k]) sum += values[(k * n_obs + o) * n_times + r];
      const double mean = sum / static_cast<double>(n_ok);
      double ss = 0.0;
      for (std::size_t k = 0; k < n_traj; ++k) {
        if (failed[k]) continue;
        const double dv = values[(k * n_obs + o) * n_times + r] - mean;
        ss += dv * dv;
      }
      result.mean[o][r] = mean;
      result.sem[o][r] =
          n_ok > 1 ? std::sqrt(ss / static_cast<double>(n_ok - 1) / static_cast<double>(n_ok))
                   : 0.0;
    }
  }

  result.n_traj = n_traj;
  result.failed = n_failed;
  result.snapped = snapped;
  if (monitor) {
    result.casimir_max_drift = 0.0;
    for (std::size_t k = 0; k < n_traj; ++k)
      if (!failed[k]) result.casimir_max_drift = std::max(result.casimir_max_drift, drift[k]);
  }
  result.metadata = {
      {"method", std::string("twa_") + to_string(rep)},
      {"seed", std::to_string(cfg.master_seed)},
      {"dt", num(cfg.integrator.dt)},
      {"integrator", "rk4"},
      {"n_traj", std::to_string(n_traj)},
      {"failed_trajectories", std::to_string(n_failed)},
      {"model_hash", hex(model_hash(model))},
      {"casimir_max_drift", monitor ? num(result.casimir_max_drift) : "n/a"},
      {"record_times_snapped", snapped ? "true" : "false"},
  };
  return result;
}

RunResult run_mean_trajectory(const ModelSpec& model,
                              const InitialDistribution& init,
                              std::span<const ObservableKind> observables,
                              const IntegratorConfig& integrator,
                              std::span<const double> record_times,
                              const AlgebraTables& tables) {
  const Representation rep = model.representation();
  if (!model.graph().bonds().empty())
    fail(ErrorCode::InvalidArgument,
         "mean-trajectory propagation refused: coupled models have a nonlinear flow");
  if (init.representation() != rep || init.n_sites() != model.n_sites())
    fail(ErrorCode::InvalidArgument,
         "initial distribution does not match the model representation or size");
  for (auto k : observables) {
    check_observable(k, rep);
    if (!is_linear(k, rep))
      fail(ErrorCode::Unsupported,
           std::string("mean-trajectory propagation is exact only for linear symbols; '") +
               to_string(k) + "' is not linear in the " + to_string(rep) + " variables");
  }
  const std::vector<double> x0 = init.mean_state();
  BlochFlow flow(model, tables);
  RunResult result;
  result.times.resize(record_times.size());
  result.mean.assign(observables.size(), std::vector<double>(record_times.size(), 0.0));
  result.sem = result.mean;
  for (auto k : observables) result.names.emplace_back(to_string(k));
  const IntegrationStatus st = integrate_visit(
      flow, x0, integrator, record_times,
      [&](std::size_t r, double t, std::span<const double> x) {
        result.times[r] = t;
        for (std::size_t o = 0; o < observables.size(); ++o)
          result.mean[o][r] = observable_weyl(observables[o], model, x, tables);
      });
  if (st.failed) fail(ErrorCode::Numerical, "mean trajectory produced NaN/Inf");
  result.snapped = st.snapped;
  result.metadata = {
      {"method", std::string("mean_") + to_string(rep)},
      {"dt", num(integrator.dt)},
      {"integrator", "rk4"},
      {"model_hash", hex(model_hash(model))},
  };
  return result;
}

}  // namespace su3twa
