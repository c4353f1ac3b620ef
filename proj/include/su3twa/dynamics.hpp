// Copyright 2026 The su3twa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "su3twa/algebra.hpp"
#include "su3twa/models.hpp"

namespace su3twa {

enum class Scheme { RK4 };

struct IntegratorConfig {
  double dt = 0.01;
  Scheme scheme = Scheme::RK4;
  std::size_t record_stride = 1;
};

/// Right-hand side of the generalized Bloch equations
///   dX_a/dt = f_abc h_b X_c,  h = dH_W/dX,
/// evaluated site by site. Holds scratch space, so one instance per thread.
class BlochFlow {
 public:
  BlochFlow(const ModelSpec& model, const AlgebraTables& tables);

  const ModelSpec& model() const { return *model_; }
  std::size_t size() const { return field_.size(); }

  void operator()(std::span<const double> x, std::span<double> dxdt);

 private:
  const ModelSpec* model_;
  std::vector<StructureEntry> entries_;
  std::vector<double> field_;
};

StateVector eom_rhs(const ModelSpec& model, const StateVector& x,
                    const AlgebraTables& tables);

/// Constant 8x8 generator A of the uncoupled SU3 flow dX/dt = A X for one
/// site term: A_ac = sum_b f_abc h_b.
Eigen::MatrixXd linear_generator(const SiteTerm& term,
                                 const AlgebraTables& tables);

struct IntegrationStatus {
  bool failed = false;
  double failure_time = 0.0;
  /// True when some record time was not on the dt grid and was moved to the
  /// nearest grid point.
  bool snapped = false;
};

/// Grid step index for each record time (nearest multiple of dt).
std::vector<std::size_t> record_steps(std::span<const double> record_times,
                                      double dt, bool* snapped = nullptr);

using RecordVisitor =
    std::function<void(std::size_t record, double time, std::span<const double> x)>;

/// Fixed-step RK4 from t = 0. Calls visit at every record time (record times
/// must be sorted, non-negative). Stops and reports failure on the first
/// non-finite state.
IntegrationStatus integrate_visit(BlochFlow& flow, std::span<const double> x0,
                                  const IntegratorConfig& cfg,
                                  std::span<const double> record_times,
                                  const RecordVisitor& visit);

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  IntegrationStatus status;
};

Trajectory integrate(const ModelSpec& model, const StateVector& x0,
                     const IntegratorConfig& cfg, double t_final,
                     std::span<const double> record_times,
                     const AlgebraTables& tables = algebra_tables());

/// Largest absolute difference between recorded states at dt and dt/2.
double step_halving_difference(const ModelSpec& model, const StateVector& x0,
                               const IntegratorConfig& cfg, double t_final,
                               std::span<const double> record_times,
                               const AlgebraTables& tables = algebra_tables());

/// Sum over record intervals of max |x_dt - x_dt/2|, each interval restarted
/// from the dt/2 solution. Unlike step_halving_difference it does not grow
/// with the divergence of nearby chaotic trajectories.
double step_halving_defect(const ModelSpec& model, const StateVector& x0,
                           const IntegratorConfig& cfg,
                           std::span<const double> record_times,
                           const AlgebraTables& tables = algebra_tables());

struct CasimirReport {
  std::vector<double> c1;
  std::vector<double> c2;
  double max_relative_drift = 0.0;
};

/// Per-site C1 = sum_a X_a^2 and C2 = sum_abc d_abc X_a X_b X_c. SU3 only.
CasimirReport casimir_values(const StateVector& x,
                             const AlgebraTables& tables = algebra_tables());
CasimirReport casimir_values(Representation rep, std::span<const double> x,
                             const AlgebraTables& tables = algebra_tables());

/// Max over sites of |dC1|/C1(0) and |dC2|/C1(0)^{3/2}; C1^{3/2} is the
/// natural scale of the cubic invariant and stays away from zero where C2(0)
/// itself may vanish.
double casimir_drift(const CasimirReport& initial, const CasimirReport& now);

}  // namespace su3twa
