// Copyright 2026 The su3twa Authors
// SPDX-License-Identifier: Apache-2.0

#include "su3twa/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "su3twa/error.hpp"

namespace su3twa {

namespace {

bool finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

struct Rk4Workspace {
  std::vector<double> k1, k2, k3, k4, tmp;
  explicit Rk4Workspace(std::size_t n) : k1(n), k2(n), k3(n), k4(n), tmp(n) {}
};

void rk4_step(BlochFlow& flow, std::vector<double>& x, double dt, Rk4Workspace& w) {
  const std::size_t n = x.size();
  flow(x, w.k1);
  for (std::size_t i = 0; i < n; ++i) w.tmp[i] = x[i] + 0.5 * dt * w.k1[i];
  flow(w.tmp, w.k2);
  for (std::size_t i = 0; i < n; ++i) w.tmp[i] = x[i] + 0.5 * dt * w.k2[i];
  flow(w.tmp, w.k3);
  for (std::size_t i = 0; i < n; ++i) w.tmp[i] = x[i] + dt * w.k3[i];
  flow(w.tmp, w.k4);
  for (std::size_t i = 0; i < n; ++i)
    x[i] += dt / 6.0 * (w.k1[i] + 2.0 * w.k2[i] + 2.0 * w.k3[i] + w.k4[i]);
}

}  // namespace

BlochFlow::BlochFlow(const ModelSpec& model, const AlgebraTables& tables)
    : model_(&model),
      field_(model.n_sites() * dimension(model.representation()), 0.0) {
  const auto all = structure_entries(model.representation(), tables);
  // h_4..h_7 vanish identically for every SU3 model.
  for (const auto& e : all) {
    if (model.representation() == Representation::SU3 && e.b >= 3 && e.b <= 6)
      continue;
    entries_.push_back(e);
  }
}

void BlochFlow::operator()(std::span<const double> x, std::span<double> dxdt) {
  effective_field(*model_, x, field_);
  const std::size_t d = dimension(model_->representation());
  const std::size_t n_sites = model_->n_sites();
  for (std::size_t n = 0; n < n_sites; ++n) {
    const double* xn = x.data() + n * d;
    const double* hn = field_.data() + n * d;
    double* out = dxdt.data() + n * d;
    for (std::size_t a = 0; a < d; ++a) out[a] = 0.0;
    for (const auto& e : entries_) out[e.a] += e.value * hn[e.b] * xn[e.c];
  }
}

StateVector eom_rhs(const ModelSpec& model, const StateVector& x,
                    const AlgebraTables& tables) {
  if (x.rep != model.representation() || x.n_sites != model.n_sites())
    fail(ErrorCode::InvalidArgument, "eom_rhs: state layout does not match model");
  if (!x.all_finite()) fail(ErrorCode::Numerical, "eom_rhs: state contains NaN/Inf");
  BlochFlow flow(model, tables);
  StateVector out(x.rep, x.n_sites);
  flow(x.values, out.values);
  return out;
}

Eigen::MatrixXd linear_generator(const SiteTerm& term,
                                 const AlgebraTables& tables) {
  const ModelSpec model = ModelSpec::uniform(Representation::SU3, term,
                                             CouplingGraph(1, {}));
  std::vector<double> x(kNumGenerators, 0.0), h(kNumGenerators);
  effective_field(model, x, h);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(kNumGenerators, kNumGenerators);
  for (std::size_t i = 0; i < kNumGenerators; ++i)
    for (std::size_t b = 0; b < kNumGenerators; ++b)
      for (std::size_t c = 0; c < kNumGenerators; ++c)
        a(i, c) += tables.f(i, b, c) * h[b];
  return a;
}

std::vector<std::size_t> record_steps(std::span<const double> record_times,
                                      double dt, bool* snapped) {
  if (!(dt > 0.0)) fail(ErrorCode::InvalidArgument, "dt must be positive");
  std::vector<std::size_t> steps;
  steps.reserve(record_times.size());
  bool moved = false;
  double prev = 0.0;
  for (double t : record_times) {
    if (!(t >= 0.0) || t < prev)
      fail(ErrorCode::InvalidArgument, "record times must be sorted and non-negative");
    prev = t;
    const double k = std::round(t / dt);
    if (std::abs(k * dt - t) > 1e-9 * std::max(1.0, t)) moved = true;
    steps.push_back(static_cast<std::size_t>(k));
  }
  if (snapped) *snapped = moved;
  return steps;
}

IntegrationStatus integrate_visit(BlochFlow& flow, std::span<const double> x0,
                                  const IntegratorConfig& cfg,
                                  std::span<const double> record_times,
                                  const RecordVisitor& visit) {
  IntegrationStatus status;
  const auto steps = record_steps(record_times, cfg.dt, &status.snapped);
  const std::size_t n = flow.size();
  if (x0.size() != n) fail(ErrorCode::InvalidArgument, "initial state does not match model");

  std::vector<double> x(x0.begin(), x0.end());
  Rk4Workspace work(n);
  const double dt = cfg.dt;
  std::size_t step = 0;
  std::size_t next = 0;

  auto emit = [&]() {
    while (next < steps.size() && steps[next] == step) {
      visit(next, static_cast<double>(step) * dt, x);
      ++next;
    }
  };
  if (!finite(x)) {
    status.failed = true;
    return status;
  }
  emit();
  while (next < steps.size()) {
    rk4_step(flow, x, dt, work);
    ++step;
    if (!finite(x)) {
      status.failed = true;
      status.failure_time = static_cast<double>(step) * dt;
      return status;
    }
    emit();
  }
  return status;
}

Trajectory integrate(const ModelSpec& model, const StateVector& x0,
                     const IntegratorConfig& cfg, double t_final,
                     std::span<const double> record_times,
                     const AlgebraTables& tables) {
  if (x0.rep != model.representation() || x0.n_sites != model.n_sites())
    fail(ErrorCode::InvalidArgument, "integrate: state layout does not match model");
  for (double t : record_times)
    if (t > t_final + 1e-12)
      fail(ErrorCode::InvalidArgument, "record time beyond t_final");
  BlochFlow flow(model, tables);
  Trajectory traj;
  traj.status = integrate_visit(
      flow, x0.values, cfg, record_times,
      [&](std::size_t, double t, std::span<const double> x) {
        traj.times.push_back(t);
        traj.states.emplace_back(x0.rep, x0.n_sites,
                                 std::vector<double>(x.begin(), x.end()));
      });
  return traj;
}

double step_halving_difference(const ModelSpec& model, const StateVector& x0,
                               const IntegratorConfig& cfg, double t_final,
                               std::span<const double> record_times,
                               const AlgebraTables& tables) {
  IntegratorConfig half = cfg;
  half.dt = cfg.dt / 2.0;
  const Trajectory coarse = integrate(model, x0, cfg, t_final, record_times, tables);
  const Trajectory fine = integrate(model, x0, half, t_final, record_times, tables);
  if (coarse.status.failed || fine.status.failed)
    return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t r = 0; r < coarse.states.size(); ++r)
    for (std::size_t i = 0; i < coarse.states[r].values.size(); ++i)
      worst = std::max(worst, std::abs(coarse.states[r].values[i] -
                                       fine.states[r].values[i]));
  return worst;
}

double step_halving_defect(const ModelSpec& model, const StateVector& x0,
                           const IntegratorConfig& cfg,
                           std::span<const double> record_times,
                           const AlgebraTables& tables) {
  if (x0.rep != model.representation() || x0.n_sites != model.n_sites())
    fail(ErrorCode::InvalidArgument, "step_halving_defect: state layout does not match model");
  const auto steps = record_steps(record_times, cfg.dt);
  BlochFlow flow(model, tables);
  Rk4Workspace work(x0.values.size());
  std::vector<double> fine = x0.values, coarse;
  double total = 0.0;
  std::size_t done = 0;
  for (std::size_t target : steps) {
    if (target == done) continue;
    coarse = fine;
    for (std::size_t k = done; k < target; ++k) {
      rk4_step(flow, coarse, cfg.dt, work);
      rk4_step(flow, fine, 0.5 * cfg.dt, work);
      rk4_step(flow, fine, 0.5 * cfg.dt, work);
    }
    if (!finite(coarse) || !finite(fine)) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t i = 0; i < fine.size(); ++i)
      worst = std::max(worst, std::abs(coarse[i] - fine[i]));
    total += worst;
    done = target;
  }
  return total;
}

CasimirReport casimir_values(Representation rep, std::span<const double> x,
                             const AlgebraTables& tables) {
  if (rep != Representation::SU3)
    fail(ErrorCode::Unsupported, "Casimir invariants are defined for SU3 states only");
  if (x.size() % kNumGenerators != 0)
    fail(ErrorCode::InvalidArgument, "state size is not a multiple of 8");
  const std::size_t n_sites = x.size() / kNumGenerators;
  struct Term {
    unsigned char a, b, c;
    double value;
  };
  std::vector<Term> terms;
  for (std::size_t a = 0; a < kNumGenerators; ++a)
    for (std::size_t b = 0; b < kNumGenerators; ++b)
      for (std::size_t c = 0; c < kNumGenerators; ++c)
        if (tables.d(a, b, c) != 0.0)
          terms.push_back({static_cast<unsigned char>(a), static_cast<unsigned char>(b),
                           static_cast<unsigned char>(c), tables.d(a, b, c)});
  CasimirReport r;
  r.c1.resize(n_sites);
  r.c2.resize(n_sites);
  for (std::size_t n = 0; n < n_sites; ++n) {
    const double* v = x.data() + n * kNumGenerators;
    double c1 = 0.0, c2 = 0.0;
    for (std::size_t a = 0; a < kNumGenerators; ++a) c1 += v[a] * v[a];
    for (const auto& t : terms) c2 += t.value * v[t.a] * v[t.b] * v[t.c];
    r.c1[n] = c1;
    r.c2[n] = c2;
  }
  return r;
}

CasimirReport casimir_values(const StateVector& x, const AlgebraTables& tables) {
  return casimir_values(x.rep, x.values, tables);
}

double casimir_drift(const CasimirReport& initial, const CasimirReport& now) {
  if (initial.c1.size() != now.c1.size())
    fail(ErrorCode::InvalidArgument, "Casimir reports cover different lattices");
  double worst = 0.0;
  for (std::size_t n = 0; n < initial.c1.size(); ++n) {
    const double scale1 = std::max(initial.c1[n], 1e-300);
    const double scale2 = std::max(std::pow(initial.c1[n], 1.5), 1e-300);
    worst = std::max(worst, std::abs(now.c1[n] - initial.c1[n]) / scale1);
    worst = std::max(worst, std::abs(now.c2[n] - initial.c2[n]) / scale2);
  }
  return worst;
}

}  // namespace su3twa
