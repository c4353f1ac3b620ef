// Copyright 2026 The su3twa Authors
// SPDX-License-Identifier: Apache-2.0

#include "su3twa/models.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <utility>

#include "su3twa/error.hpp"

namespace su3twa {

namespace {

const double kSqrt3 = std::sqrt(3.0);

void check_layout(const ModelSpec& model, std::size_t size, const char* what) {
  if (size != model.n_sites() * dimension(model.representation())) {
    std::ostringstream os;
    os << what << ": expected " << model.n_sites() << " sites of dimension "
       << dimension(model.representation()) << ", got " << size << " values";
    fail(ErrorCode::InvalidArgument, os.str());
  }
}

}  // namespace

StateVector::StateVector(Representation r, std::size_t n, std::vector<double> v)
    : rep(r), n_sites(n), values(std::move(v)) {
  if (values.size() != n * dimension(r))
    fail(ErrorCode::InvalidArgument, "state vector size does not match layout");
}

bool StateVector::all_finite() const {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return std::isfinite(v); });
}

CouplingGraph::CouplingGraph(std::size_t n_sites, std::vector<Bond> bonds)
    : n_sites_(n_sites), bonds_(std::move(bonds)) {
  std::vector<std::pair<std::size_t, std::size_t>> seen;
  seen.reserve(bonds_.size());
  std::vector<std::size_t> deg(n_sites_, 0);
  for (const auto& bond : bonds_) {
    if (bond.a >= bond.b) fail(ErrorCode::InvalidArgument, "bond must have a < b");
    if (bond.b >= n_sites_) fail(ErrorCode::InvalidArgument, "bond site index out of range");
    if (!std::isfinite(bond.weight)) fail(ErrorCode::InvalidArgument, "bond weight is not finite");
    seen.emplace_back(bond.a, bond.b);
    ++deg[bond.a];
    ++deg[bond.b];
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    fail(ErrorCode::InvalidArgument, "duplicate bond in coupling graph");

  offsets_.assign(n_sites_ + 1, 0);
  for (std::size_t n = 0; n < n_sites_; ++n) offsets_[n + 1] = offsets_[n] + deg[n];
  adjacency_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& bond : bonds_) {
    adjacency_[fill[bond.a]++] = {bond.b, bond.weight};
    adjacency_[fill[bond.b]++] = {bond.a, bond.weight};
  }
}

CouplingGraph build_fully_connected(std::size_t n_sites, double coupling) {
  if (n_sites < 1) fail(ErrorCode::InvalidArgument, "fully connected model needs M >= 1");
  std::vector<Bond> bonds;
  bonds.reserve(n_sites * (n_sites - 1) / 2);
  for (std::size_t a = 0; a < n_sites; ++a)
    for (std::size_t b = a + 1; b < n_sites; ++b)
      bonds.push_back({a, b, 2.0 * coupling});
  return CouplingGraph(n_sites, std::move(bonds));
}

CouplingGraph build_cubic_lattice(std::size_t side, double bond_weight) {
  if (side < 2) fail(ErrorCode::InvalidArgument, "cubic lattice needs L >= 2");
  const std::size_t n = side * side * side;
  auto index = [side](std::size_t x, std::size_t y, std::size_t z) {
    return (x * side + y) * side + z;
  };
  std::map<std::pair<std::size_t, std::size_t>, double> merged;
  for (std::size_t x = 0; x < side; ++x) {
    for (std::size_t y = 0; y < side; ++y) {
      for (std::size_t z = 0; z < side; ++z) {
        const std::size_t here = index(x, y, z);
        const std::size_t forward[3] = {index((x + 1) % side, y, z),
                                        index(x, (y + 1) % side, z),
                                        index(x, y, (z + 1) % side)};
        for (std::size_t there : forward) {
          merged[{std::min(here, there), std::max(here, there)}] += bond_weight;
        }
      }
    }
  }
  std::vector<Bond> bonds;
  bonds.reserve(merged.size());
  for (const auto& [key, w] : merged) bonds.push_back({key.first, key.second, w});
  return CouplingGraph(n, std::move(bonds));
}

ModelSpec::ModelSpec(Representation rep, std::vector<SiteTerm> sites,
                     CouplingGraph graph)
    : rep_(rep), sites_(std::move(sites)), graph_(std::move(graph)) {
  if (sites_.size() != graph_.n_sites())
    fail(ErrorCode::InvalidArgument, "site terms do not match coupling graph size");
  for (const auto& s : sites_) {
    const bool finite = std::isfinite(s.field[0]) && std::isfinite(s.field[1]) &&
                        std::isfinite(s.field[2]) && std::isfinite(s.interaction) &&
                        std::isfinite(s.chemical_potential);
    if (!finite) fail(ErrorCode::InvalidArgument, "site term is not finite");
  }
}

ModelSpec ModelSpec::uniform(Representation rep, const SiteTerm& term,
                             CouplingGraph graph) {
  std::vector<SiteTerm> sites(graph.n_sites(), term);
  return ModelSpec(rep, std::move(sites), std::move(graph));
}

void effective_field(const ModelSpec& model, std::span<const double> x,
                     std::span<double> field) {
  check_layout(model, x.size(), "effective_field");
  check_layout(model, field.size(), "effective_field output");
  const std::size_t d = dimension(model.representation());
  const bool su3 = model.representation() == Representation::SU3;
  const auto& graph = model.graph();
  for (std::size_t n = 0; n < model.n_sites(); ++n) {
    const SiteTerm& s = model.site(n);
    const double* xn = x.data() + n * d;
    double* h = field.data() + n * d;
    double h1 = -s.field[0];
    double h2 = -s.field[1];
    for (const auto& nb : graph.neighbors(n)) {
      h1 -= nb.weight * x[nb.site * d];
      h2 -= nb.weight * x[nb.site * d + 1];
    }
    h[0] = h1;
    h[1] = h2;
    h[2] = -s.field[2] - s.chemical_potential;
    if (su3) {
      for (std::size_t a = 3; a < 7; ++a) h[a] = 0.0;
      h[7] = -kSqrt3 * s.interaction / 6.0;
    } else {
      h[2] += s.interaction * xn[2];
    }
  }
}

StateVector effective_field(const ModelSpec& model, const StateVector& x) {
  if (x.rep != model.representation())
    fail(ErrorCode::InvalidArgument, "state representation does not match model");
  StateVector out(x.rep, x.n_sites);
  effective_field(model, x.values, out.values);
  return out;
}

double hamiltonian_weyl(const ModelSpec& model, std::span<const double> x,
                        bool include_constants) {
  check_layout(model, x.size(), "hamiltonian_weyl");
  const std::size_t d = dimension(model.representation());
  const bool su3 = model.representation() == Representation::SU3;
  double energy = 0.0;
  for (std::size_t n = 0; n < model.n_sites(); ++n) {
    const SiteTerm& s = model.site(n);
    const double* xn = x.data() + n * d;
    energy -= s.field[0] * xn[0] + s.field[1] * xn[1] +
              (s.field[2] + s.chemical_potential) * xn[2];
    if (su3) {
      energy -= kSqrt3 * s.interaction / 6.0 * xn[7];
      if (include_constants) energy += s.interaction / 3.0;
    } else {
      energy += 0.5 * s.interaction * xn[2] * xn[2];
      if (include_constants) energy -= 0.25 * s.interaction;
    }
  }
  for (const auto& bond : model.graph().bonds()) {
    const double* xa = x.data() + bond.a * d;
    const double* xb = x.data() + bond.b * d;
    energy -= bond.weight * (xa[0] * xb[0] + xa[1] * xb[1]);
  }
  return energy;
}

}  // namespace su3twa
