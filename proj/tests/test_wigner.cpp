// Copyright 2026 The su3twa Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "su3twa/error.hpp"
#include "su3twa/wigner.hpp"

using namespace su3twa;

namespace {

const double kS2 = std::sqrt(2.0);
const double kS3 = std::sqrt(3.0);

Matrix3c random_pure(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Vector3cd v;
  for (int i = 0; i < 3; ++i) v(i) = {n(rng), n(rng)};
  v.normalize();
  return v * v.adjoint();
}

// Rotation that diagonalizes the |S_x=+1> Gaussian (rows act on X_1..X_8).
Eigen::MatrixXd sx_rotation() {
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(8, 8);
  r(0, 3) = -0.5;        r(0, 7) = kS3 / 2.0;
  r(1, 6) = 1.0;
  r(2, 2) = -1.0 / kS2;  r(2, 5) = 1.0 / kS2;
  r(3, 1) = 1.0 / kS2;   r(3, 4) = 1.0 / kS2;
  r(4, 3) = kS3 / 2.0;   r(4, 7) = 0.5;
  r(5, 2) = 1.0 / kS2;   r(5, 5) = 1.0 / kS2;
  r(6, 1) = -1.0 / kS2;  r(6, 4) = 1.0 / kS2;
  r(7, 0) = 1.0;
  return r;
}

}  // namespace

TEST_CASE("moments of |S_x=+1>") {
  const auto m = moments_from_density(named_state_density(NamedState::SxPlusOne), generator_set());
  REQUIRE(m.dim() == 8);
  const double expected[8] = {1.0, 0, 0, 0.5, 0, 0, 0, 1.0 / (2.0 * kS3)};
  for (int a = 0; a < 8; ++a) CHECK(m.mean(a) == doctest::Approx(expected[a]).epsilon(1e-14));

  // Rotated frame: means (0,0,0,0,1/sqrt3,0,0,1), variances sigma^2 = (1,1,1,1,0,0,0,0).
  const Eigen::MatrixXd r = sx_rotation();
  CHECK((r * r.transpose() - Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-15);
  const Eigen::VectorXd mu = r * m.mean;
  const double mu_expected[8] = {0, 0, 0, 0, 1.0 / kS3, 0, 0, 1.0};
  for (int k = 0; k < 8; ++k) CHECK(std::abs(mu(k) - mu_expected[k]) < 1e-14);
  const Eigen::MatrixXd rotated = r * m.covariance * r.transpose();
  const double var_expected[8] = {1, 1, 1, 1, 0, 0, 0, 0};
  for (int k = 0; k < 8; ++k)
    for (int l = 0; l < 8; ++l)
      CHECK(std::abs(rotated(k, l) - (k == l ? var_expected[k] : 0.0)) < 1e-14);
}

TEST_CASE("moments of simple states") {
  SUBCASE("maximally mixed") {
    const auto m = moments_from_density(Matrix3c::Identity() / 3.0, generator_set());
    CHECK(m.mean.cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("|S_z=0>") {
    const auto m = moments_from_density(named_state_density(NamedState::SzZero), generator_set());
    for (int a = 0; a < 7; ++a) CHECK(std::abs(m.mean(a)) < 1e-15);
    CHECK(m.mean(7) == doctest::Approx(2.0 / kS3));
  }
}

TEST_CASE("restrict_su2") {
  SUBCASE("|S_x=+1>") {
    const auto m = restrict_su2(
        moments_from_density(named_state_density(NamedState::SxPlusOne), generator_set()));
    REQUIRE(m.dim() == 3);
    CHECK(m.mean(0) == doctest::Approx(1.0));
    CHECK(std::abs(m.mean(1)) < 1e-15);
    CHECK(std::abs(m.mean(2)) < 1e-15);
    CHECK(std::abs(m.covariance(0, 0)) < 1e-15);
    CHECK(m.covariance(1, 1) == doctest::Approx(0.5));
    CHECK(m.covariance(2, 2) == doctest::Approx(0.5));
    CHECK(std::abs(m.covariance(0, 1)) < 1e-15);
    CHECK(std::abs(m.covariance(0, 2)) < 1e-15);
    CHECK(std::abs(m.covariance(1, 2)) < 1e-15);
  }
  SUBCASE("maximally mixed") {
    const auto m = restrict_su2(moments_from_density(Matrix3c::Identity() / 3.0, generator_set()));
    CHECK(m.mean.cwiseAbs().maxCoeff() < 1e-15);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(std::abs(m.covariance(i, j) - (i == j ? 2.0 / 3.0 : 0.0)) < 1e-15);
  }
  SUBCASE("zero moments") {
    GaussianMoments z{Eigen::VectorXd::Zero(8), Eigen::MatrixXd::Zero(8, 8)};
    const auto m = restrict_su2(z);
    CHECK(m.mean.isZero());
    CHECK(m.covariance.isZero());
  }
  SUBCASE("matches direct 3-component moments") {
    std::mt19937_64 rng(7);
    const GeneratorSet& g = generator_set();
    for (int trial = 0; trial < 20; ++trial) {
      const Matrix3c rho = random_pure(rng);
      const auto m = restrict_su2(moments_from_density(rho, g));
      for (int a = 0; a < 3; ++a) {
        const double mean = (rho * g[a]).trace().real();
        CHECK(m.mean(a) == doctest::Approx(mean));
        for (int b = 0; b < 3; ++b) {
          const double sym = (rho * (g[a] * g[b] + g[b] * g[a])).trace().real() / 2.0;
          const double mb = (rho * g[b]).trace().real();
          CHECK(m.covariance(a, b) == doctest::Approx(sym - mean * mb));
        }
      }
    }
  }
  SUBCASE("wrong dimension") {
    GaussianMoments z{Eigen::VectorXd::Zero(3), Eigen::MatrixXd::Zero(3, 3)};
    CHECK_THROWS_AS(restrict_su2(z), Error);
  }
}

TEST_CASE("second-moment identity: sum_a tr(rho T_a^2) = sum_a (mean^2 + var)") {
  std::mt19937_64 rng(11);
  const GeneratorSet& g = generator_set();
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix3c rho = random_pure(rng);
    const auto m = moments_from_density(rho, g);
    double lhs = 0.0;
    for (int a = 0; a < 8; ++a) lhs += (rho * g[a] * g[a]).trace().real();
    const double rhs = m.mean.squaredNorm() + m.covariance.trace();
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
    CHECK(lhs == doctest::Approx(16.0 / 3.0).epsilon(1e-13));
  }
}

TEST_CASE("density validation") {
  Matrix3c bad_trace = Matrix3c::Identity() / 2.0;
  CHECK_THROWS_AS(validate_density(bad_trace), Error);
  Matrix3c not_psd = Matrix3c::Zero();
  not_psd(0, 0) = 1.5;
  not_psd(1, 1) = -0.5;
  CHECK_THROWS_AS(validate_density(not_psd), Error);
  Matrix3c non_herm = named_state_density(NamedState::SxPlusOne);
  non_herm(0, 1) += std::complex<double>(0.0, 0.1);
  CHECK_THROWS_AS(moments_from_density(non_herm, generator_set()), Error);
  CHECK_THROWS_AS(ProductStateSpec::uniform(not_psd, 2), Error);
}

TEST_CASE("sampler: degenerate and rejected covariances") {
  SUBCASE("zero covariance returns the mean exactly") {
    GaussianMoments m{Eigen::VectorXd::LinSpaced(8, -1.0, 1.0), Eigen::MatrixXd::Zero(8, 8)};
    RngEngine rng = make_stream(3, 0);
    const auto batch = sample_gaussian(m, 50, rng);
    for (std::size_t i = 0; i < batch.n_samples; ++i)
      for (std::size_t a = 0; a < 8; ++a) CHECK(batch.row(i)[a] == m.mean(a));
  }
  SUBCASE("|S_x=+1> eigenvalues are {1,1,1,1,0,0,0,0}") {
    const auto m = moments_from_density(named_state_density(NamedState::SxPlusOne), generator_set());
    GaussianSampler s(m);
    std::vector<double> ev(s.eigenvalues().data(), s.eigenvalues().data() + 8);
    std::sort(ev.begin(), ev.end());
    for (int k = 0; k < 4; ++k) CHECK(std::abs(ev[k]) < 1e-10);
    for (int k = 4; k < 8; ++k) CHECK(std::abs(ev[k] - 1.0) < 1e-10);
  }
  SUBCASE("tiny negative eigenvalue is clamped") {
    GaussianMoments m{Eigen::VectorXd::Zero(2), Eigen::MatrixXd::Zero(2, 2)};
    m.covariance(0, 0) = 1.0;
    m.covariance(1, 1) = -1e-12;
    GaussianSampler s(m);
    CHECK(s.eigenvalues().minCoeff() == 0.0);
  }
  SUBCASE("negative eigenvalue rejected") {
    GaussianMoments m{Eigen::VectorXd::Zero(2), Eigen::MatrixXd::Zero(2, 2)};
    m.covariance(0, 0) = 1.0;
    m.covariance(1, 1) = -1e-6;
    CHECK_THROWS_AS(GaussianSampler{m}, Error);
    RngEngine rng = make_stream(1, 1);
    CHECK_THROWS_AS(sample_gaussian(m, 10, rng), Error);
  }
  SUBCASE("n = 0 rejected") {
    GaussianMoments m{Eigen::VectorXd::Zero(2), Eigen::MatrixXd::Identity(2, 2)};
    RngEngine rng = make_stream(1, 1);
    CHECK_THROWS_AS(sample_gaussian(m, 0, rng), Error);
  }
}

TEST_CASE("sampled moments converge at 1/sqrt(n) (5 sigma)") {
  const auto m = moments_from_density(named_state_density(NamedState::SxPlusOne), generator_set());
  for (std::size_t n : {1000u, 10000u, 100000u}) {
    CAPTURE(n);
    RngEngine rng = make_stream(2024, n);
    const auto batch = sample_gaussian(m, n, rng);
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(8);
    for (std::size_t i = 0; i < n; ++i)
      mean += Eigen::Map<const Eigen::VectorXd>(batch.row(i).data(), 8);
    mean /= static_cast<double>(n);
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(8, 8);
    for (std::size_t i = 0; i < n; ++i) {
      const Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(batch.row(i).data(), 8) - m.mean;
      cov += d * d.transpose();
    }
    cov /= static_cast<double>(n);
    const double rn = std::sqrt(static_cast<double>(n));
    for (int a = 0; a < 8; ++a) {
      // Coarse bound 5/sqrt(n) (all variances <= 1) and the sharper 5 sigma one.
      CHECK(std::abs(mean(a) - m.mean(a)) <= 5.0 / rn);
      CHECK(std::abs(mean(a) - m.mean(a)) <= 5.0 * std::sqrt(m.covariance(a, a)) / rn + 1e-15);
      for (int b = 0; b < 8; ++b) {
        // Var[(x_a - mu_a)(x_b - mu_b)] = C_aa C_bb + C_ab^2 for a Gaussian.
        const double sd = std::sqrt(m.covariance(a, a) * m.covariance(b, b) +
                                    m.covariance(a, b) * m.covariance(a, b));
        CHECK(std::abs(cov(a, b) - m.covariance(a, b)) <= 5.0 * sd / rn + 1e-12);
      }
    }
  }
}

TEST_CASE("streams are deterministic and order independent") {
  RngEngine a = make_stream(99, 5);
  RngEngine b0 = make_stream(99, 4);
  RngEngine b = make_stream(99, 5);
  (void)b0();
  CHECK(a() == b());
  RngEngine c = make_stream(99, 6);
  RngEngine d = make_stream(99, 5);
  CHECK(c() != d());

  const ProductStateSpec state = ProductStateSpec::uniform(NamedState::SxPlusOne, 4);
  const InitialDistribution init(Representation::SU3, state);
  std::vector<double> x1(32), x2(32);
  RngEngine r1 = make_stream(1, 17), r2 = make_stream(1, 17);
  init.draw(r1, x1);
  init.draw(r2, x2);
  CHECK(x1 == x2);
}

TEST_CASE("initial distribution layout") {
  std::vector<Matrix3c> sites = {named_state_density(NamedState::SxPlusOne),
                                 named_state_density(NamedState::SzZero),
                                 named_state_density(NamedState::SxPlusOne)};
  const InitialDistribution init(Representation::SU2, ProductStateSpec(sites));
  CHECK(init.n_sites() == 3);
  CHECK(init.dim() == 3);
  const auto mean = init.mean_state();
  REQUIRE(mean.size() == 9);
  CHECK(mean[0] == doctest::Approx(1.0));
  CHECK(mean[3] == doctest::Approx(0.0));
  CHECK(mean[6] == doctest::Approx(1.0));
  std::vector<double> wrong(8);
  RngEngine rng = make_stream(0, 0);
  CHECK_THROWS_AS(init.draw(rng, wrong), Error);
}
