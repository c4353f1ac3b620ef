// Copyright 2026 The su3twa Authors
// SPDX-License-Identifier: Apache-2.0

#include "su3twa/algebra.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "su3twa/error.hpp"

namespace su3twa {

namespace {

using cd = std::complex<double>;

constexpr double kImagTolerance = 1e-10;
constexpr double kHermitianTolerance = 1e-12;
constexpr double kZero = 1e-13;

Matrix3c make(std::initializer_list<cd> entries) {
  Matrix3c m;
  auto it = entries.begin();
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = *it++;
  return m;
}

}  // namespace

const char* to_string(Representation rep) {
  return rep == Representation::SU2 ? "su2" : "su3";
}

GeneratorSet build_generator_set() {
  const double r2 = 1.0 / std::sqrt(2.0);
  const double r3 = 1.0 / std::sqrt(3.0);
  const cd i{0.0, 1.0};
  GeneratorSet g;
  g.generators[0] = make({0, r2, 0, r2, 0, r2, 0, r2, 0});
  g.generators[1] = make({0, -i * r2, 0, i * r2, 0, -i * r2, 0, i * r2, 0});
  g.generators[2] = make({1, 0, 0, 0, 0, 0, 0, 0, -1});
  g.generators[3] = make({0, 0, 1, 0, 0, 0, 1, 0, 0});
  g.generators[4] = make({0, 0, -i, 0, 0, 0, i, 0, 0});
  g.generators[5] = make({0, -r2, 0, -r2, 0, r2, 0, r2, 0});
  g.generators[6] = make({0, i * r2, 0, -i * r2, 0, -i * r2, 0, i * r2, 0});
  g.generators[7] = make({-r3, 0, 0, 0, 2 * r3, 0, 0, 0, -r3});
  return g;
}

const GeneratorSet& generator_set() {
  static const GeneratorSet gens = build_generator_set();
  return gens;
}

Matrix3c spin_x() { return generator_set()[0]; }
Matrix3c spin_y() { return generator_set()[1]; }
Matrix3c spin_z() { return generator_set()[2]; }

AlgebraTables compute_structure_constants(const GeneratorSet& gens) {
  AlgebraTables t;
  const cd two_i{0.0, 2.0};
  for (std::size_t a = 0; a < kNumGenerators; ++a) {
    for (std::size_t b = 0; b < kNumGenerators; ++b) {
      const Matrix3c ab = gens[a] * gens[b];
      const Matrix3c ba = gens[b] * gens[a];
      const Matrix3c comm = ab - ba;
      const Matrix3c anti = ab + ba;
      for (std::size_t c = 0; c < kNumGenerators; ++c) {
        const cd fv = (comm * gens[c]).trace() / two_i;
        const cd dv = (anti * gens[c]).trace() / 2.0;
        if (std::abs(fv.imag()) > kImagTolerance ||
            std::abs(dv.imag()) > kImagTolerance) {
          std::ostringstream os;
          os << "structure constant (" << a + 1 << "," << b + 1 << ","
             << c + 1 << ") is not real; generator set is corrupted";
          fail(ErrorCode::Numerical, os.str());
        }
        t.f(a, b, c) = std::abs(fv.real()) < kZero ? 0.0 : fv.real();
        t.d(a, b, c) = std::abs(dv.real()) < kZero ? 0.0 : dv.real();
      }
    }
  }
  return t;
}

const AlgebraTables& algebra_tables() {
  static const AlgebraTables tables =
      compute_structure_constants(generator_set());
  return tables;
}

std::vector<StructureEntry> structure_entries(Representation rep,
                                              const AlgebraTables& tables) {
  std::vector<StructureEntry> out;
  if (rep == Representation::SU2) {
    // Levi-Civita; equals f restricted to the spin block.
    const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                             {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
    for (int p = 0; p < 6; ++p) {
      out.push_back({static_cast<unsigned char>(perms[p][0]),
                     static_cast<unsigned char>(perms[p][1]),
                     static_cast<unsigned char>(perms[p][2]),
                     p < 3 ? 1.0 : -1.0});
    }
    return out;
  }
  for (std::size_t a = 0; a < kNumGenerators; ++a)
    for (std::size_t b = 0; b < kNumGenerators; ++b)
      for (std::size_t c = 0; c < kNumGenerators; ++c)
        if (tables.f(a, b, c) != 0.0)
          out.push_back({static_cast<unsigned char>(a),
                         static_cast<unsigned char>(b),
                         static_cast<unsigned char>(c), tables.f(a, b, c)});
  return out;
}

Matrix3c HermitianDecomposition::reconstruct(const GeneratorSet& gens) const {
  Matrix3c m = identity * Matrix3c::Identity();
  for (std::size_t a = 0; a < kNumGenerators; ++a)
    m += coefficients[a] * gens[a];
  return m;
}

HermitianDecomposition decompose_hermitian(const Matrix3c& h,
                                           const GeneratorSet& gens) {
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > kHermitianTolerance)
    fail(ErrorCode::InvalidArgument, "decompose_hermitian: matrix is not Hermitian");
  HermitianDecomposition out;
  out.identity = h.trace().real() / 3.0;
  for (std::size_t a = 0; a < kNumGenerators; ++a)
    out.coefficients[a] = (h * gens[a]).trace().real() / 2.0;
  return out;
}

}  // namespace su3twa
