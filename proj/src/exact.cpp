// Copyright 2026 The su3twa Authors
// SPDX-License-Identifier: Apache-2.0

#include "su3twa/exact.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "su3twa/error.hpp"

namespace su3twa {

namespace {

using cd = std::complex<double>;
using SparseC = Eigen::SparseMatrix<cd>;

constexpr std::size_t kTimeBlock = 64;

void check_cap(std::size_t n_sites) {
  if (n_sites == 0) fail(ErrorCode::InvalidArgument, "exact oracle needs at least one site");
  if (n_sites > kExactSiteCap) {
    std::ostringstream os;
    os << "exact diagonalization is capped at M <= " << kExactSiteCap
       << " sites (dimension 3^M); got M = " << n_sites
       << ". Use the TWA drivers for larger systems.";
    fail(ErrorCode::CapExceeded, os.str());
  }
}

ManyBodyOperator wrap(std::size_t n_sites, SparseC m) {
  m.prune(cd(0.0, 0.0));
  m.makeCompressed();
  return {n_sites, std::move(m)};
}

}  // namespace

double ManyBodyOperator::hermiticity_error() const {
  const SparseC diff = matrix - SparseC(matrix.adjoint());
  double worst = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (SparseC::InnerIterator it(diff, k); it; ++it)
      worst = std::max(worst, std::abs(it.value()));
  return worst;
}

std::size_t hilbert_dimension(std::size_t n_sites) {
  std::size_t dim = 1;
  for (std::size_t n = 0; n < n_sites; ++n) dim *= 3;
  return dim;
}

ManyBodyOperator embed_site(const Matrix3c& op, std::size_t site,
                            std::size_t n_sites) {
  check_cap(n_sites);
  if (site >= n_sites) fail(ErrorCode::InvalidArgument, "site index out of range");
  const std::size_t dim = hilbert_dimension(n_sites);
  const std::size_t stride = hilbert_dimension(n_sites - 1 - site);
  std::vector<Eigen::Triplet<cd>> triplets;
  triplets.reserve(dim * 3);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    const std::size_t m = (idx / stride) % 3;
    for (std::size_t mp = 0; mp < 3; ++mp) {
      const cd v = op(static_cast<Eigen::Index>(mp), static_cast<Eigen::Index>(m));
      if (v == cd(0.0, 0.0)) continue;
      const std::size_t target = idx + mp * stride - m * stride;
      triplets.emplace_back(static_cast<int>(target), static_cast<int>(idx), v);
    }
  }
  SparseC mat(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  mat.setFromTriplets(triplets.begin(), triplets.end());
  return wrap(n_sites, std::move(mat));
}

ManyBodyOperator build_hamiltonian(const ModelSpec& model) {
  const std::size_t m = model.n_sites();
  check_cap(m);
  const std::size_t dim = hilbert_dimension(m);
  const Matrix3c sx = spin_x(), sy = spin_y(), sz = spin_z();

  std::vector<SparseC> sxs, sys;
  SparseC h(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t n = 0; n < m; ++n) {
    const SiteTerm& s = model.site(n);
    const Matrix3c local = -s.field[0] * sx - s.field[1] * sy -
                           (s.field[2] + s.chemical_potential) * sz +
                           0.5 * s.interaction * sz * sz;
    h += embed_site(local, n, m).matrix;
    sxs.push_back(embed_site(sx, n, m).matrix);
    sys.push_back(embed_site(sy, n, m).matrix);
  }
  for (const auto& bond : model.graph().bonds()) {
    const SparseC xx = sxs[bond.a] * sxs[bond.b];
    const SparseC yy = sys[bond.a] * sys[bond.b];
    h -= bond.weight * (xx + yy);
  }
  return wrap(m, std::move(h));
}

ManyBodyOperator build_observable(ObservableKind kind, std::size_t n_sites) {
  check_cap(n_sites);
  const std::size_t dim = hilbert_dimension(n_sites);
  const double inv_m = 1.0 / static_cast<double>(n_sites);
  SparseC out(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  switch (kind) {
    case ObservableKind::SxMean:
      for (std::size_t n = 0; n < n_sites; ++n)
        out += inv_m * embed_site(spin_x(), n, n_sites).matrix;
      break;
    case ObservableKind::SzSqPerSite: {
      const Matrix3c sz2 = spin_z() * spin_z();
      for (std::size_t n = 0; n < n_sites; ++n)
        out += inv_m * embed_site(sz2, n, n_sites).matrix;
      break;
    }
    case ObservableKind::RhoS: {
      const cd i{0.0, 1.0};
      const Matrix3c plus = spin_x() + i * spin_y();
      const Matrix3c minus = spin_x() - i * spin_y();
      std::vector<SparseC> p, q;
      for (std::size_t n = 0; n < n_sites; ++n) {
        p.push_back(embed_site(plus, n, n_sites).matrix);
        q.push_back(embed_site(minus, n, n_sites).matrix);
      }
      for (std::size_t a = 0; a < n_sites; ++a)
        for (std::size_t b = 0; b < n_sites; ++b)
          if (a != b) out += SparseC(p[a] * q[b]);
      out *= inv_m * inv_m;
      break;
    }
    default:
      fail(ErrorCode::Unsupported,
           std::string("observable '") + to_string(kind) +
               "' has no many-body operator form");
  }
  return wrap(n_sites, std::move(out));
}

Eigen::VectorXcd product_state(std::span<const Eigen::Vector3cd> sites) {
  check_cap(sites.size());
  Eigen::VectorXcd psi = Eigen::VectorXcd::Ones(1);
  for (const auto& local : sites) {
    Eigen::VectorXcd next(psi.size() * 3);
    for (Eigen::Index i = 0; i < psi.size(); ++i)
      for (Eigen::Index m = 0; m < 3; ++m) next(i * 3 + m) = psi(i) * local(m);
    psi = std::move(next);
  }
  return psi;
}

Eigen::VectorXcd product_state(NamedState s, std::size_t n_sites) {
  const std::vector<Eigen::Vector3cd> sites(n_sites, named_state_vector(s));
  return product_state(sites);
}

bool Spectrum::real() const {
  return std::all_of(blocks.begin(), blocks.end(),
                     [](const SpectrumBlock& b) { return b.real; });
}

Eigen::VectorXd Spectrum::energies() const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(dimension));
  Eigen::Index k = 0;
  for (const auto& b : blocks) {
    out.segment(k, b.energies.size()) = b.energies;
    k += b.energies.size();
  }
  return out;
}

namespace {

std::vector<std::vector<Eigen::Index>> invariant_blocks(const SparseC& h) {
  const auto n = h.rows();
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), Eigen::Index{0});
  auto find = [&](Eigen::Index i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  };
  for (int k = 0; k < h.outerSize(); ++k)
    for (SparseC::InnerIterator it(h, k); it; ++it) {
      const Eigen::Index a = find(it.row()), b = find(it.col());
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<Eigen::Index> label(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<Eigen::Index>> blocks;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index root = find(i);
    if (label[root] < 0) {
      label[root] = static_cast<Eigen::Index>(blocks.size());
      blocks.emplace_back();
    }
    blocks[static_cast<std::size_t>(label[root])].push_back(i);
  }
  return blocks;
}

Eigen::MatrixXcd dense_block(const SparseC& h, const std::vector<Eigen::Index>& idx,
                             std::vector<Eigen::Index>& local) {
  const auto nb = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(nb, nb);
  for (Eigen::Index j = 0; j < nb; ++j) local[idx[j]] = j;
  for (Eigen::Index j = 0; j < nb; ++j)
    for (SparseC::InnerIterator it(h, idx[j]); it; ++it) out(local[it.row()], j) = it.value();
  return out;
}

}  // namespace

Spectrum diagonalize(const ManyBodyOperator& h) {
  if (h.hermiticity_error() > 1e-10)
    fail(ErrorCode::InvalidArgument, "Hamiltonian is not Hermitian");
  Spectrum s;
  s.dimension = h.dim();
  const auto groups = invariant_blocks(h.matrix);
  s.blocks.resize(groups.size());
  bool failed = false;
#pragma omp parallel
  {
    std::vector<Eigen::Index> local(h.dim(), -1);
#pragma omp for schedule(dynamic)
    for (std::size_t g = 0; g < groups.size(); ++g) {
      SpectrumBlock& b = s.blocks[g];
      b.indices = groups[g];
      const Eigen::MatrixXcd dense = dense_block(h.matrix, b.indices, local);
      b.real = dense.imag().cwiseAbs().maxCoeff() == 0.0;
      if (b.real) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense.real());
        if (solver.info() != Eigen::Success) {
#pragma omp atomic write
          failed = true;
          continue;
        }
        b.energies = solver.eigenvalues();
        b.vectors_real = solver.eigenvectors();
      } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense);
        if (solver.info() != Eigen::Success) {
#pragma omp atomic write
          failed = true;
          continue;
        }
        b.energies = solver.eigenvalues();
        b.vectors_complex = solver.eigenvectors();
      }
    }
  }
  if (failed) fail(ErrorCode::Numerical, "eigendecomposition did not converge");
  return s;
}

double eigen_residual(const ManyBodyOperator& h, const Spectrum& s) {
  if (s.dim() != h.dim()) fail(ErrorCode::InvalidArgument, "spectrum does not match operator");
  std::vector<Eigen::Index> local(h.dim(), -1);
  double sum = 0.0;
  for (const auto& b : s.blocks) {
    const Eigen::MatrixXcd dense = dense_block(h.matrix, b.indices, local);
    const Eigen::MatrixXcd v = b.real ? Eigen::MatrixXcd(b.vectors_real.cast<cd>())
                                      : b.vectors_complex;
    sum += (dense * v - v * b.energies.cast<cd>().asDiagonal()).squaredNorm();
  }
  return std::sqrt(sum) / std::max(h.matrix.norm(), 1e-300);
}

EDResult evolve_expectation(const Spectrum& spectrum,
                            const Eigen::VectorXcd& psi0,
                            std::span<const ManyBodyOperator> observables,
                            std::span<const double> times) {
  const auto n = static_cast<Eigen::Index>(spectrum.dim());
  if (psi0.size() != n) fail(ErrorCode::InvalidArgument, "initial state has wrong dimension");
  if (std::abs(psi0.squaredNorm() - 1.0) > 1e-12)
    fail(ErrorCode::InvalidArgument, "initial state is not normalized");
  for (const auto& o : observables)
    if (static_cast<Eigen::Index>(o.dim()) != n)
      fail(ErrorCode::InvalidArgument, "observable dimension does not match Hamiltonian");

  std::vector<Eigen::VectorXcd> coeffs;
  coeffs.reserve(spectrum.blocks.size());
  for (const auto& b : spectrum.blocks) {
    const Eigen::VectorXcd local = psi0(b.indices);
    coeffs.push_back(b.real ? Eigen::VectorXcd(b.vectors_real.transpose() * local)
                            : Eigen::VectorXcd(b.vectors_complex.adjoint() * local));
  }

  EDResult out;
  out.times.assign(times.begin(), times.end());
  out.expectations.assign(observables.size(), std::vector<double>(times.size()));

  for (std::size_t start = 0; start < times.size(); start += kTimeBlock) {
    const std::size_t count = std::min(kTimeBlock, times.size() - start);
    const auto cols = static_cast<Eigen::Index>(count);
    Eigen::MatrixXcd states(n, cols);
    for (std::size_t bi = 0; bi < spectrum.blocks.size(); ++bi) {
      const SpectrumBlock& b = spectrum.blocks[bi];
      const Eigen::Index nb = b.energies.size();
      Eigen::MatrixXcd phased(nb, cols);
      for (Eigen::Index k = 0; k < cols; ++k) {
        const double t = times[start + static_cast<std::size_t>(k)];
        for (Eigen::Index e = 0; e < nb; ++e)
          phased(e, k) = std::polar(1.0, -b.energies(e) * t) * coeffs[bi](e);
      }
      if (b.real) {
        const Eigen::MatrixXd re = b.vectors_real * phased.real();
        const Eigen::MatrixXd im = b.vectors_real * phased.imag();
        for (Eigen::Index r = 0; r < nb; ++r)
          for (Eigen::Index k = 0; k < cols; ++k) states(b.indices[r], k) = cd(re(r, k), im(r, k));
      } else {
        states(b.indices, Eigen::all) = b.vectors_complex * phased;
      }
    }
    for (std::size_t o = 0; o < observables.size(); ++o) {
      const Eigen::MatrixXcd applied = observables[o].matrix * states;
      for (Eigen::Index k = 0; k < cols; ++k) {
        const cd value = states.col(k).dot(applied.col(k));
        if (std::abs(value.imag()) > 1e-9)
          fail(ErrorCode::Numerical, "expectation value has an imaginary part");
        out.expectations[o][start + static_cast<std::size_t>(k)] = value.real();
      }
    }
  }
  return out;
}

EDResult evolve_expectation(const ManyBodyOperator& h,
                            const Eigen::VectorXcd& psi0,
                            std::span<const ManyBodyOperator> observables,
                            std::span<const double> times) {
  return evolve_expectation(diagonalize(h), psi0, observables, times);
}

}  // namespace su3twa
