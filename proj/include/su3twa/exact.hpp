// Copyright 2026 The su3twa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "su3twa/models.hpp"
#include "su3twa/observables.hpp"
#include "su3twa/wigner.hpp"

namespace su3twa {

/// Largest lattice handled by dense diagonalization (3^8 = 6561 states).
inline constexpr std::size_t kExactSiteCap = 8;

/// Operator on the 3^M-dimensional space. Basis is site-major: the state
/// index is sum_n m_n 3^(M-1-n) with local order (m=+1, m=0, m=-1).
struct ManyBodyOperator {
  std::size_t n_sites = 0;
  Eigen::SparseMatrix<std::complex<double>> matrix;

  std::size_t dim() const { return static_cast<std::size_t>(matrix.rows()); }
  double hermiticity_error() const;
};

std::size_t hilbert_dimension(std::size_t n_sites);

/// Local 3x3 operator on site `n`, identity elsewhere.
ManyBodyOperator embed_site(const Matrix3c& op, std::size_t site,
                            std::size_t n_sites);

/// sum_n [-B.S^n + (U/2)(S_z^n)^2 - mu S_z^n] - sum_bonds w (S_x S_x + S_y S_y).
/// Throws CapExceeded beyond kExactSiteCap sites.
ManyBodyOperator build_hamiltonian(const ModelSpec& model);

/// SxMean, SzSqPerSite or RhoS; other kinds throw Unsupported.
ManyBodyOperator build_observable(ObservableKind kind, std::size_t n_sites);

/// Tensor product of single-site states.
Eigen::VectorXcd product_state(std::span<const Eigen::Vector3cd> sites);
Eigen::VectorXcd product_state(NamedState s, std::size_t n_sites);

/// Eigendecomposition of one invariant subspace: the basis states listed in
/// `indices` are closed under H, and H restricted to them is V diag(E) V^dagger.
struct SpectrumBlock {
  std::vector<Eigen::Index> indices;
  Eigen::VectorXd energies;
  bool real = true;
  Eigen::MatrixXd vectors_real;
  Eigen::MatrixXcd vectors_complex;
};

/// H split into the connected components of its sparsity graph (total S_z
/// sectors when the model conserves it), each diagonalized densely. Real
/// blocks use the real symmetric solver.
struct Spectrum {
  std::size_t dimension = 0;
  std::vector<SpectrumBlock> blocks;

  std::size_t dim() const { return dimension; }
  bool real() const;
  /// Eigenvalues in block order.
  Eigen::VectorXd energies() const;
};

Spectrum diagonalize(const ManyBodyOperator& h);

/// ||H V - V E|| / ||H|| in the Frobenius norm.
double eigen_residual(const ManyBodyOperator& h, const Spectrum& s);

struct EDResult {
  std::vector<double> times;
  std::vector<std::vector<double>> expectations;  // [observable][time]
};

/// <psi(t)|O|psi(t)> with psi(t) = exp(-iHt) psi0, from one
/// eigendecomposition. psi0 must be normalized to 1e-12.
EDResult evolve_expectation(const Spectrum& spectrum,
                            const Eigen::VectorXcd& psi0,
                            std::span<const ManyBodyOperator> observables,
                            std::span<const double> times);
EDResult evolve_expectation(const ManyBodyOperator& h,
                            const Eigen::VectorXcd& psi0,
                            std::span<const ManyBodyOperator> observables,
                            std::span<const double> times);

}  // namespace su3twa
