// Copyright 2026 The su3twa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "su3twa/algebra.hpp"

namespace su3twa {

/// Phase-space point of a whole lattice: n_sites blocks of dimension(rep).
struct StateVector {
  Representation rep = Representation::SU3;
  std::size_t n_sites = 0;
  std::vector<double> values;

  StateVector() = default;
  StateVector(Representation r, std::size_t n)
      : rep(r), n_sites(n), values(n * dimension(r), 0.0) {}
  StateVector(Representation r, std::size_t n, std::vector<double> v);

  std::size_t dim() const { return dimension(rep); }
  std::span<double> site(std::size_t n) {
    return {values.data() + n * dim(), dim()};
  }
  std::span<const double> site(std::size_t n) const {
    return {values.data() + n * dim(), dim()};
  }
  bool all_finite() const;
};

/// On-site parameters of -B.S + (U/2) S_z^2 - mu S_z.
struct SiteTerm {
  std::array<double, 3> field{};
  double interaction = 0.0;
  double chemical_potential = 0.0;
};

struct Bond {
  std::size_t a;
  std::size_t b;
  double weight;
};

/// Undirected XY couplings -w (S_x^a S_x^b + S_y^a S_y^b), one entry per
/// unordered pair. Validated: a < b < n_sites, no duplicates.
class CouplingGraph {
 public:
  CouplingGraph() = default;
  CouplingGraph(std::size_t n_sites, std::vector<Bond> bonds);

  std::size_t n_sites() const { return n_sites_; }
  const std::vector<Bond>& bonds() const { return bonds_; }
  std::size_t degree(std::size_t n) const {
    return offsets_[n + 1] - offsets_[n];
  }

  struct Neighbor {
    std::size_t site;
    double weight;
  };
  std::span<const Neighbor> neighbors(std::size_t n) const {
    return {adjacency_.data() + offsets_[n], degree(n)};
  }

 private:
  std::size_t n_sites_ = 0;
  std::vector<Bond> bonds_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
};

/// Every unordered pair with weight 2J: the Hamiltonian sums over ordered
/// pairs n != m.
CouplingGraph build_fully_connected(std::size_t n_sites, double coupling);

/// Periodic L x L x L nearest-neighbour lattice, one bond per unordered pair.
/// For L = 2 both wrap directions reach the same neighbour; the two bonds are
/// merged into one of weight 2 * bond_weight.
CouplingGraph build_cubic_lattice(std::size_t side, double bond_weight);

class ModelSpec {
 public:
  ModelSpec(Representation rep, std::vector<SiteTerm> sites,
            CouplingGraph graph);

  static ModelSpec uniform(Representation rep, const SiteTerm& term,
                           CouplingGraph graph);

  Representation representation() const { return rep_; }
  std::size_t n_sites() const { return sites_.size(); }
  const std::vector<SiteTerm>& sites() const { return sites_; }
  const SiteTerm& site(std::size_t n) const { return sites_[n]; }
  const CouplingGraph& graph() const { return graph_; }

  ModelSpec with_representation(Representation rep) const {
    return ModelSpec(rep, sites_, graph_);
  }

 private:
  Representation rep_;
  std::vector<SiteTerm> sites_;
  CouplingGraph graph_;
};

/// h = dH_W/dX for every site, written into `field` (same layout as x).
void effective_field(const ModelSpec& model, std::span<const double> x,
                     std::span<double> field);
StateVector effective_field(const ModelSpec& model, const StateVector& x);

/// Scalar Weyl symbol H_W(X). With include_constants the X-independent terms
/// are added: U/3 per site for SU3, and the symmetric-order offset -U/4 per
/// site for SU2.
double hamiltonian_weyl(const ModelSpec& model, std::span<const double> x,
                        bool include_constants = true);

}  // namespace su3twa
