// Copyright 2026 The su3twa Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "su3twa/algebra.hpp"
#include "su3twa/error.hpp"

using namespace su3twa;

namespace {

const double kS3 = std::sqrt(3.0);

double max_abs(const Matrix3c& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("generators are Hermitian, traceless and normalized") {
  const GeneratorSet& g = generator_set();
  for (std::size_t a = 0; a < 8; ++a) {
    CHECK(max_abs(g[a] - g[a].adjoint()) < 1e-14);
    CHECK(std::abs(g[a].trace()) < 1e-14);
    for (std::size_t b = 0; b < 8; ++b) {
      const auto tr = (g[a] * g[b]).trace();
      CHECK(std::abs(tr - (a == b ? 2.0 : 0.0)) < 1e-14);
    }
  }
}

TEST_CASE("generator values") {
  const GeneratorSet g = build_generator_set();
  Matrix3c t3 = Matrix3c::Zero();
  t3(0, 0) = 1.0;
  t3(2, 2) = -1.0;
  CHECK(max_abs(g[2] - t3) == 0.0);

  Matrix3c t8 = Matrix3c::Zero();
  t8(0, 0) = -1.0 / kS3;
  t8(1, 1) = 2.0 / kS3;
  t8(2, 2) = -1.0 / kS3;
  CHECK(max_abs(g[7] - t8) < 1e-15);
  CHECK(std::abs((g[0] * g[0]).trace() - 2.0) < 1e-14);

  // Spin-one algebra on the first three.
  const std::complex<double> i{0.0, 1.0};
  CHECK(max_abs(g[0] * g[1] - g[1] * g[0] - i * g[2]) < 1e-14);
  const Matrix3c s2 = g[0] * g[0] + g[1] * g[1] + g[2] * g[2];
  CHECK(max_abs(s2 - 2.0 * Matrix3c::Identity()) < 1e-14);
}

TEST_CASE("generators relate to spin bilinears") {
  const GeneratorSet& g = generator_set();
  const Matrix3c sx = g[0], sy = g[1], sz = g[2];
  CHECK(max_abs(g[3] - (sx * sx - sy * sy)) < 1e-14);
  CHECK(max_abs(g[4] - (sx * sy + sy * sx)) < 1e-14);
  // T_6, T_7 are the negated anticommutators for these matrices.
  CHECK(max_abs(g[5] + (sx * sz + sz * sx)) < 1e-14);
  CHECK(max_abs(g[6] + (sy * sz + sz * sy)) < 1e-14);
  CHECK(max_abs(g[7] - (sx * sx + sy * sy - 2.0 * sz * sz) / kS3) < 1e-14);
}

TEST_CASE("structure constants") {
  const AlgebraTables& t = algebra_tables();
  CHECK(t.f(0, 1, 2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(t.f(2, 3, 4) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(t.f(0, 6, 7) == doctest::Approx(kS3).epsilon(1e-14));
  CHECK(t.f(0, 0, 7) == 0.0);
  CHECK(t.d(0, 0, 7) == doctest::Approx(1.0 / kS3).epsilon(1e-14));
  CHECK(t.d(0, 0, 3) == doctest::Approx(1.0).epsilon(1e-14));

  // Direct matrix computation tr({T8,T8}T8)/2 = tr(T8^3) = 2 (-1/sqrt3)^3 + (2/sqrt3)^3.
  const double d888 = 2.0 * std::pow(-1.0 / kS3, 3) + std::pow(2.0 / kS3, 3);
  CHECK(d888 == doctest::Approx(2.0 / kS3));
  CHECK(t.d(7, 7, 7) == doctest::Approx(d888).epsilon(1e-14));
}

TEST_CASE("f antisymmetric, d symmetric") {
  const AlgebraTables& t = algebra_tables();
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t b = 0; b < 8; ++b)
      for (std::size_t c = 0; c < 8; ++c) {
        CHECK(t.f(a, b, c) == doctest::Approx(-t.f(b, a, c)));
        CHECK(t.f(a, b, c) == doctest::Approx(-t.f(a, c, b)));
        CHECK(t.d(a, b, c) == doctest::Approx(t.d(b, a, c)));
        CHECK(t.d(a, b, c) == doctest::Approx(t.d(a, c, b)));
      }
}

TEST_CASE("Jacobi identity and commutator closure") {
  const AlgebraTables& t = algebra_tables();
  const GeneratorSet& g = generator_set();
  double jacobi = 0.0;
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t b = 0; b < 8; ++b)
      for (std::size_t c = 0; c < 8; ++c)
        for (std::size_t e = 0; e < 8; ++e) {
          double s = 0.0;
          for (std::size_t k = 0; k < 8; ++k)
            s += t.f(a, b, k) * t.f(k, c, e) + t.f(b, c, k) * t.f(k, a, e) +
                 t.f(c, a, k) * t.f(k, b, e);
          jacobi = std::max(jacobi, std::abs(s));
        }
  CHECK(jacobi < 1e-10);

  const std::complex<double> i{0.0, 1.0};
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t b = 0; b < 8; ++b) {
      Matrix3c m = g[a] * g[b] - g[b] * g[a];
      for (std::size_t c = 0; c < 8; ++c) m -= i * t.f(a, b, c) * g[c];
      CHECK(max_abs(m) < 1e-12);
    }
}

TEST_CASE("corrupted generator set is rejected") {
  GeneratorSet g = build_generator_set();
  g.generators[0](0, 1) = std::complex<double>(0.3, 0.9);  // breaks Hermiticity
  CHECK_THROWS_AS(compute_structure_constants(g), Error);
}

TEST_CASE("structure entries") {
  const auto su3 = structure_entries(Representation::SU3, algebra_tables());
  CHECK(su3.size() == 54);  // 9 independent triples x 6 permutations
  const auto su2 = structure_entries(Representation::SU2, algebra_tables());
  CHECK(su2.size() == 6);
  for (const auto& e : su2) CHECK(e.value == doctest::Approx(algebra_tables().f(e.a, e.b, e.c)));
}

TEST_CASE("decompose_hermitian") {
  const GeneratorSet& g = generator_set();
  const Matrix3c sx = g[0], sy = g[1], sz = g[2];

  SUBCASE("S_z^2") {
    const auto h = decompose_hermitian(sz * sz, g);
    CHECK(h.identity == doctest::Approx(2.0 / 3.0));
    CHECK(h.coefficients[7] == doctest::Approx(-1.0 / kS3));
    for (std::size_t a = 0; a < 7; ++a) CHECK(std::abs(h.coefficients[a]) < 1e-15);
  }
  SUBCASE("identity") {
    const auto h = decompose_hermitian(Matrix3c::Identity(), g);
    CHECK(h.identity == doctest::Approx(1.0));
    for (double c : h.coefficients) CHECK(std::abs(c) < 1e-15);
  }
  SUBCASE("S_x^2 - S_y^2") {
    const auto h = decompose_hermitian(sx * sx - sy * sy, g);
    CHECK(std::abs(h.identity) < 1e-15);
    for (std::size_t a = 0; a < 8; ++a)
      CHECK(h.coefficients[a] == doctest::Approx(a == 3 ? 1.0 : 0.0));
  }
  SUBCASE("spin squares") {
    const auto x2 = decompose_hermitian(sx * sx, g);
    CHECK(x2.identity == doctest::Approx(2.0 / 3.0));
    CHECK(x2.coefficients[7] == doctest::Approx(1.0 / (2.0 * kS3)));
    CHECK(x2.coefficients[3] == doctest::Approx(0.5));
    const auto y2 = decompose_hermitian(sy * sy, g);
    CHECK(y2.identity == doctest::Approx(2.0 / 3.0));
    CHECK(y2.coefficients[7] == doctest::Approx(1.0 / (2.0 * kS3)));
    CHECK(y2.coefficients[3] == doctest::Approx(-0.5));
  }
  SUBCASE("non-Hermitian rejected") {
    Matrix3c m = Matrix3c::Zero();
    m(0, 1) = 1.0;
    CHECK_THROWS_AS(decompose_hermitian(m, g), Error);
  }
}

TEST_CASE("decompose then reconstruct is the identity (random Hermitian)") {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> n(0.0, 1.0);
  const GeneratorSet& g = generator_set();
  for (int trial = 0; trial < 200; ++trial) {
    Matrix3c a;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) a(r, c) = {n(rng), n(rng)};
    const Matrix3c h = a + a.adjoint();
    const auto dec = decompose_hermitian(h, g);
    CHECK(max_abs(dec.reconstruct(g) - h) < 1e-12);
  }
}
