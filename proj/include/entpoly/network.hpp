#pragma once

// Network states: tensor products of EPR pairs, GHZ states and GHZ-diagonal
// two-site mixtures distributed among parties.
//
// Composition order: resources are tensored in the order given, then the
// particles are reordered so that each party's particles are contiguous
// (party 0 first), keeping resource order within a party. Each party is then
// one composite site of dimension equal to the product of its particles.

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "entpoly/errors.hpp"
#include "entpoly/states.hpp"
#include "entpoly/tensor.hpp"

namespace entpoly {

enum class ResourceKind { epr, ghz, ghz_diagonal };

struct Resource {
  ResourceKind kind = ResourceKind::epr;
  std::size_t d = 2;
  std::vector<std::size_t> parties;  // holder of each particle, in particle order

  static Resource epr(std::size_t a, std::size_t b) {
    return {ResourceKind::epr, 2, {a, b}};
  }
  static Resource ghz(std::size_t d, std::vector<std::size_t> parties) {
    return {ResourceKind::ghz, d, std::move(parties)};
  }
  /// (1/d) sum_j |jj><jj|
  static Resource ghz_diagonal(std::size_t d, std::size_t a, std::size_t b) {
    return {ResourceKind::ghz_diagonal, d, {a, b}};
  }

  std::size_t particles() const {
    return kind == ResourceKind::ghz ? parties.size() : 2;
  }
  bool is_pure() const { return kind != ResourceKind::ghz_diagonal; }

  Matrix density() const {
    switch (kind) {
      case ResourceKind::epr: {
        const auto s = entpoly::epr();
        return s.density();
      }
      case ResourceKind::ghz: {
        const auto s = entpoly::ghz(d, parties.size());
        return s.density();
      }
      case ResourceKind::ghz_diagonal: {
        Matrix m(d * d, d * d);
        for (std::size_t j = 0; j < d; ++j) m(j * d + j, j * d + j) = 1.0 / double(d);
        return m;
      }
    }
    throw invalid_input("resource: unknown kind");
  }
};

struct NetworkSpec {
  std::size_t parties = 0;
  std::vector<Resource> resources;
};

struct NetworkState {
  Matrix density;
  Dims party_dims;
  bool pure = true;  // every resource was pure
};

inline void validate(const NetworkSpec& spec) {
  if (spec.parties < 2) throw invalid_input("network: need at least two parties");
  if (spec.resources.empty()) throw invalid_input("network: no resources");
  for (const auto& r : spec.resources) {
    if (r.d < 2) throw invalid_input("network: resource dimension must be >= 2");
    if (r.kind == ResourceKind::epr && r.d != 2)
      throw invalid_input("network: EPR resources are two-level");
    if (r.kind != ResourceKind::ghz && r.parties.size() != 2)
      throw invalid_input("network: EPR and GHZ-diagonal resources have two particles");
    if (r.kind == ResourceKind::ghz && r.parties.size() < 2)
      throw invalid_input("network: GHZ resources need at least two particles");
    for (auto p : r.parties)
      if (p >= spec.parties)
        throw invalid_input("network: resource references party " + std::to_string(p) +
                            " of " + std::to_string(spec.parties));
  }
}

inline NetworkState compose_network(const NetworkSpec& spec) {
  validate(spec);

  Matrix rho = Matrix::identity(1);
  Dims particle_dims;
  std::vector<std::size_t> holder;
  bool pure = true;
  for (const auto& r : spec.resources) {
    rho = kron(rho, r.density());
    for (auto p : r.parties) {
      particle_dims.push_back(r.d);
      holder.push_back(p);
    }
    pure = pure && r.is_pure();
  }

  Dims party_dims(spec.parties, 1);
  for (std::size_t i = 0; i < holder.size(); ++i) party_dims[holder[i]] *= particle_dims[i];
  for (std::size_t p = 0; p < spec.parties; ++p)
    if (party_dims[p] == 1)
      throw invalid_input("network: party " + std::to_string(p) + " holds no particle");

  std::vector<std::size_t> perm(holder.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t a, std::size_t b) { return holder[a] < holder[b]; });

  return {permute_sites(rho, particle_dims, perm), std::move(party_dims), pure};
}

/// Every pair of the n parties shares one EPR pair.
inline NetworkSpec complete_graph_network(std::size_t n) {
  NetworkSpec spec{n, {}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) spec.resources.push_back(Resource::epr(i, j));
  return spec;
}

}  // namespace entpoly
