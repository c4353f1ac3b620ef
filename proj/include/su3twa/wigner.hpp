// Copyright 2026 The su3twa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "su3twa/algebra.hpp"

namespace su3twa {

enum class NamedState { SxPlusOne, SzZero };

Eigen::Vector3cd named_state_vector(NamedState s);
Matrix3c named_state_density(NamedState s);
const char* to_string(NamedState s);

/// Per-site density matrices of a product state. Every matrix is validated on
/// construction: Hermitian, unit trace, positive semidefinite.
class ProductStateSpec {
 public:
  ProductStateSpec() = default;
  explicit ProductStateSpec(std::vector<Matrix3c> sites);

  static ProductStateSpec uniform(const Matrix3c& rho, std::size_t n_sites);
  static ProductStateSpec uniform(NamedState s, std::size_t n_sites);

  std::size_t size() const { return sites_.size(); }
  const Matrix3c& operator[](std::size_t n) const { return sites_[n]; }

 private:
  std::vector<Matrix3c> sites_;
};

/// Throws InvalidArgument naming the failed property.
void validate_density(const Matrix3c& rho);

/// Single-site Gaussian quasi-probability: mean and covariance of the
/// phase-space variables (dimension 3 for SU2, 8 for SU3).
struct GaussianMoments {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;

  std::size_t dim() const { return static_cast<std::size_t>(mean.size()); }
};

/// mean_a = tr(rho T_a), cov_ab = tr(rho {T_a,T_b}/2) - mean_a mean_b.
GaussianMoments moments_from_density(const Matrix3c& rho,
                                     const GeneratorSet& gens);

/// Keeps components 1..3 (the spin block).
GaussianMoments restrict_su2(const GaussianMoments& m);

/// Moments of the requested representation for a density matrix.
GaussianMoments moments_for(Representation rep, const Matrix3c& rho);

/// Deterministic stream for trajectory `index` of a run seeded with `seed`.
/// Streams for distinct indices are independent of each other and of the
/// order in which they are created.
using RngEngine = std::mt19937_64;
RngEngine make_stream(std::uint64_t seed, std::uint64_t index);

/// Precomputed eigen-factorization of a covariance matrix:
/// x = mean + V sqrt(Lambda) z with z standard normal. Eigenvalues in
/// [-1e-10, 0) are clamped to zero; anything more negative is rejected.
class GaussianSampler {
 public:
  explicit GaussianSampler(const GaussianMoments& m);

  std::size_t dim() const { return static_cast<std::size_t>(mean_.size()); }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }

  /// Draws dim() standard normals from rng and writes one point into out.
  void draw(RngEngine& rng, std::span<double> out) const;

 private:
  Eigen::VectorXd mean_;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd transform_;
};

struct SampleBatch {
  std::size_t n_samples = 0;
  std::size_t dim = 0;
  std::vector<double> points;  // row-major, n_samples x dim

  std::span<const double> row(std::size_t i) const {
    return {points.data() + i * dim, dim};
  }
};

SampleBatch sample_gaussian(const GaussianMoments& m, std::size_t n,
                            RngEngine& rng);

/// Joint initial distribution of a lattice: one Gaussian per site, sites
/// uncorrelated.
class InitialDistribution {
 public:
  InitialDistribution(Representation rep, const ProductStateSpec& state);

  Representation representation() const { return rep_; }
  std::size_t n_sites() const { return site_index_.size(); }
  std::size_t dim() const { return dimension(rep_); }

  const GaussianMoments& site_moments(std::size_t n) const {
    return moments_[site_index_[n]];
  }

  /// Concatenated per-site means.
  std::vector<double> mean_state() const;

  /// One phase-space point for all sites, drawn site by site from rng.
  void draw(RngEngine& rng, std::span<double> out) const;

 private:
  Representation rep_;
  std::vector<GaussianMoments> moments_;
  std::vector<GaussianSampler> samplers_;
  std::vector<std::size_t> site_index_;
};

}  // namespace su3twa
