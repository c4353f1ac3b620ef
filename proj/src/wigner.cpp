// Copyright 2026 The su3twa Authors
// SPDX-License-Identifier: Apache-2.0

#include "su3twa/wigner.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "su3twa/error.hpp"

namespace su3twa {

namespace {

constexpr double kDensityTolerance = 1e-12;
constexpr double kPsdTolerance = 1e-10;

}  // namespace

Eigen::Vector3cd named_state_vector(NamedState s) {
  Eigen::Vector3cd v;
  switch (s) {
    case NamedState::SxPlusOne:
      v << 0.5, 1.0 / std::sqrt(2.0), 0.5;
      break;
    case NamedState::SzZero:
      v << 0.0, 1.0, 0.0;
      break;
  }
  return v;
}

Matrix3c named_state_density(NamedState s) {
  const Eigen::Vector3cd v = named_state_vector(s);
  return v * v.adjoint();
}

const char* to_string(NamedState s) {
  return s == NamedState::SxPlusOne ? "sx_plus_one" : "sz_zero";
}

void validate_density(const Matrix3c& rho) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kDensityTolerance)
    fail(ErrorCode::InvalidArgument, "density matrix is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > kDensityTolerance)
    fail(ErrorCode::InvalidArgument, "density matrix trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Matrix3c> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kDensityTolerance)
    fail(ErrorCode::InvalidArgument,
         "density matrix is not positive semidefinite");
}

ProductStateSpec::ProductStateSpec(std::vector<Matrix3c> sites)
    : sites_(std::move(sites)) {
  for (const auto& rho : sites_) validate_density(rho);
}

ProductStateSpec ProductStateSpec::uniform(const Matrix3c& rho,
                                           std::size_t n_sites) {
  return ProductStateSpec(std::vector<Matrix3c>(n_sites, rho));
}

ProductStateSpec ProductStateSpec::uniform(NamedState s, std::size_t n_sites) {
  return uniform(named_state_density(s), n_sites);
}

GaussianMoments moments_from_density(const Matrix3c& rho,
                                     const GeneratorSet& gens) {
  validate_density(rho);
  GaussianMoments m;
  m.mean.resize(kNumGenerators);
  m.covariance.resize(kNumGenerators, kNumGenerators);
  for (std::size_t a = 0; a < kNumGenerators; ++a)
    m.mean(a) = (rho * gens[a]).trace().real();
  for (std::size_t a = 0; a < kNumGenerators; ++a) {
    for (std::size_t b = a; b < kNumGenerators; ++b) {
      const Matrix3c sym = 0.5 * (gens[a] * gens[b] + gens[b] * gens[a]);
      const double c = (rho * sym).trace().real() - m.mean(a) * m.mean(b);
      m.covariance(a, b) = c;
      m.covariance(b, a) = c;
    }
  }
  return m;
}

GaussianMoments restrict_su2(const GaussianMoments& m) {
  if (m.dim() != kNumGenerators)
    fail(ErrorCode::InvalidArgument, "restrict_su2 expects 8-dimensional moments");
  GaussianMoments out;
  out.mean = m.mean.head(3);
  out.covariance = m.covariance.topLeftCorner(3, 3);
  return out;
}

GaussianMoments moments_for(Representation rep, const Matrix3c& rho) {
  GaussianMoments m = moments_from_density(rho, generator_set());
  return rep == Representation::SU3 ? m : restrict_su2(m);
}

RngEngine make_stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return RngEngine(seq);
}

GaussianSampler::GaussianSampler(const GaussianMoments& m) : mean_(m.mean) {
  const auto n = m.mean.size();
  if (m.covariance.rows() != n || m.covariance.cols() != n)
    fail(ErrorCode::InvalidArgument, "covariance shape does not match mean");
  if (!m.mean.allFinite() || !m.covariance.allFinite())
    fail(ErrorCode::InvalidArgument, "moments contain non-finite values");
  const Eigen::MatrixXd sym = 0.5 * (m.covariance + m.covariance.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  eigenvalues_ = es.eigenvalues();
  for (Eigen::Index k = 0; k < n; ++k) {
    if (eigenvalues_(k) < -kPsdTolerance) {
      std::ostringstream os;
      os << "covariance is not positive semidefinite (eigenvalue "
         << eigenvalues_(k) << ")";
      fail(ErrorCode::NotPositiveSemidefinite, os.str());
    }
    if (eigenvalues_(k) < 0.0) eigenvalues_(k) = 0.0;
  }
  // Exact zeros for degenerate directions keep those components at the mean.
  transform_ = es.eigenvectors() * eigenvalues_.cwiseSqrt().asDiagonal();
  for (Eigen::Index k = 0; k < n; ++k)
    if (eigenvalues_(k) == 0.0) transform_.col(k).setZero();
}

void GaussianSampler::draw(RngEngine& rng, std::span<double> out) const {
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto n = mean_.size();
  Eigen::VectorXd z(n);
  for (Eigen::Index k = 0; k < n; ++k) z(k) = normal(rng);
  Eigen::Map<Eigen::VectorXd>(out.data(), n) = mean_ + transform_ * z;
}

SampleBatch sample_gaussian(const GaussianMoments& m, std::size_t n,
                            RngEngine& rng) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "sample count must be >= 1");
  GaussianSampler sampler(m);
  SampleBatch batch;
  batch.n_samples = n;
  batch.dim = sampler.dim();
  batch.points.resize(n * batch.dim);
  for (std::size_t i = 0; i < n; ++i)
    sampler.draw(rng, {batch.points.data() + i * batch.dim, batch.dim});
  return batch;
}

InitialDistribution::InitialDistribution(Representation rep,
                                         const ProductStateSpec& state)
    : rep_(rep) {
  site_index_.reserve(state.size());
  std::vector<Matrix3c> distinct;
  for (std::size_t n = 0; n < state.size(); ++n) {
    std::size_t k = 0;
    while (k < distinct.size() && distinct[k] != state[n]) ++k;
    if (k == distinct.size()) {
      distinct.push_back(state[n]);
      moments_.push_back(moments_for(rep, state[n]));
      samplers_.emplace_back(moments_.back());
    }
    site_index_.push_back(k);
  }
}

std::vector<double> InitialDistribution::mean_state() const {
  const std::size_t d = dim();
  std::vector<double> out(n_sites() * d);
  for (std::size_t n = 0; n < n_sites(); ++n) {
    const auto& mean = site_moments(n).mean;
    for (std::size_t a = 0; a < d; ++a) out[n * d + a] = mean(a);
  }
  return out;
}

void InitialDistribution::draw(RngEngine& rng, std::span<double> out) const {
  const std::size_t d = dim();
  if (out.size() != n_sites() * d)
    fail(ErrorCode::InvalidArgument, "output span does not match lattice size");
  for (std::size_t n = 0; n < n_sites(); ++n)
    samplers_[site_index_[n]].draw(rng, out.subspan(n * d, d));
}

}  // namespace su3twa
