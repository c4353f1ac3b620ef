// Copyright 2026 The su3twa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace su3twa {

using Matrix3c = Eigen::Matrix3cd;

inline constexpr std::size_t kNumGenerators = 8;

/// Phase-space representation of a single spin-one site.
enum class Representation { SU2, SU3 };

constexpr std::size_t dimension(Representation rep) {
  return rep == Representation::SU2 ? 3 : 8;
}

const char* to_string(Representation rep);

/// Eight Hermitian traceless 3x3 matrices, normalized to tr(T_a T_b) = 2
/// delta_ab, with T_1..T_3 equal to the spin-one matrices S_x, S_y, S_z.
/// Basis order of the rows is (m = +1, m = 0, m = -1).
struct GeneratorSet {
  std::array<Matrix3c, kNumGenerators> generators;

  const Matrix3c& operator[](std::size_t a) const { return generators[a]; }
};

GeneratorSet build_generator_set();

/// Shared immutable instance.
const GeneratorSet& generator_set();

Matrix3c spin_x();
Matrix3c spin_y();
Matrix3c spin_z();

/// Dense rank-3 tensor over the eight generator indices (0-based).
class Tensor3 {
 public:
  Tensor3() { data_.fill(0.0); }

  double& operator()(std::size_t a, std::size_t b, std::size_t c) {
    return data_[(a * kNumGenerators + b) * kNumGenerators + c];
  }
  double operator()(std::size_t a, std::size_t b, std::size_t c) const {
    return data_[(a * kNumGenerators + b) * kNumGenerators + c];
  }

 private:
  std::array<double, kNumGenerators * kNumGenerators * kNumGenerators> data_;
};

/// f: [T_a, T_b] = i f_abc T_c.  d: {T_a, T_b} = (4/3) delta_ab + d_abc T_c
/// in this normalization, i.e. d_abc = tr({T_a,T_b} T_c) / 2.
struct AlgebraTables {
  Tensor3 f;
  Tensor3 d;
};

/// Derives both tensors from trace identities. Throws Numerical if any entry
/// carries an imaginary part above 1e-10.
AlgebraTables compute_structure_constants(const GeneratorSet& gens);

const AlgebraTables& algebra_tables();

/// Nonzero entry of an antisymmetric structure tensor, used in the inner
/// loop of the equations of motion.
struct StructureEntry {
  unsigned char a;
  unsigned char b;
  unsigned char c;
  double value;
};

/// All nonzero f_abc for the given representation. SU2 uses the Levi-Civita
/// symbol on three indices.
std::vector<StructureEntry> structure_entries(Representation rep,
                                              const AlgebraTables& tables);

struct HermitianDecomposition {
  double identity = 0.0;
  std::array<double, kNumGenerators> coefficients{};

  Matrix3c reconstruct(const GeneratorSet& gens) const;
};

/// c0 = tr(H)/3, c_a = tr(H T_a)/2. Rejects inputs that are not Hermitian to
/// 1e-12.
HermitianDecomposition decompose_hermitian(const Matrix3c& h,
                                           const GeneratorSet& gens);

}  // namespace su3twa
