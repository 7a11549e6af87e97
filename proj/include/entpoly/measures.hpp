#pragma once

// Bipartite entanglement measures of pure multipartite states.
//
// Entropy-based measures are the entropy of the reduced state of either side
// (equal for pure states); the side with the smaller Hilbert space is used.
//   concurrence  C = sqrt(2 (1 - Tr rho_A^2))
//   negativity   N = (||rho^{T_B}||_1 - 1) / 2

#include <cmath>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "entpoly/eigen.hpp"
#include "entpoly/entropies.hpp"
#include "entpoly/errors.hpp"
#include "entpoly/network.hpp"
#include "entpoly/states.hpp"
#include "entpoly/tensor.hpp"

namespace entpoly {

struct Bipartition {
  SiteSet side_a;
  SiteSet side_b;

  /// Disjoint, nonempty, covering 0..n_sites-1.
  void validate(std::size_t n_sites) const {
    if (side_a.empty() || side_b.empty())
      throw invalid_input("bipartition: both sides must be nonempty");
    side_a.check_within(n_sites);
    side_b.check_within(n_sites);
    if (side_a.size() + side_b.size() != n_sites)
      throw invalid_input("bipartition: sides must cover every site exactly once");
    for (auto s : side_a)
      if (side_b.contains(s)) throw invalid_input("bipartition: sides overlap");
  }

  Bipartition swapped() const { return {side_b, side_a}; }

  /// "0,2|1,3"
  std::string to_string() const {
    std::ostringstream os;
    auto put = [&](const SiteSet& s) {
      for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    };
    put(side_a);
    os << '|';
    put(side_b);
    return os.str();
  }

  static Bipartition parse(const std::string& text) {
    const auto bar = text.find('|');
    if (bar == std::string::npos || text.find('|', bar + 1) != std::string::npos)
      throw invalid_input("cut '" + text + "': expected exactly one '|'");
    auto sites = [&](const std::string& part) {
      std::vector<std::size_t> out;
      const auto last = part.find_last_not_of(" \t");
      if (last != std::string::npos && part[last] == ',')
        throw invalid_input("cut '" + text + "': empty site");
      std::stringstream ss(part);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        const auto b = tok.find_first_not_of(" \t");
        const auto e = tok.find_last_not_of(" \t");
        if (b == std::string::npos) throw invalid_input("cut '" + text + "': empty site");
        tok = tok.substr(b, e - b + 1);
        if (tok.find_first_not_of("0123456789") != std::string::npos)
          throw invalid_input("cut '" + text + "': bad site '" + tok + "'");
        out.push_back(std::stoul(tok));
      }
      return SiteSet(std::move(out));
    };
    return {sites(text.substr(0, bar)), sites(text.substr(bar + 1))};
  }
};

/// {j} | everything else
inline Bipartition one_to_group(std::size_t j, std::size_t n_sites) {
  if (j >= n_sites) throw invalid_input("one_to_group: site out of range");
  SiteSet a{j};
  return {a, a.complement(n_sites)};
}

enum class MeasureKind { q_concurrence, unified, renyi, tsallis, eof, concurrence, negativity };

struct MeasureSpec {
  MeasureKind kind = MeasureKind::eof;
  double q = 2.0;  // q_concurrence
  double r = 2.0;  // unified, renyi, tsallis
  double s = 1.0;  // unified

  static MeasureSpec q_concurrence(double q) { return {MeasureKind::q_concurrence, q}; }
  static MeasureSpec unified(double r, double s) { return {MeasureKind::unified, 2.0, r, s}; }
  static MeasureSpec renyi(double r) { return {MeasureKind::renyi, 2.0, r}; }
  static MeasureSpec tsallis(double r) { return {MeasureKind::tsallis, 2.0, r}; }
  static MeasureSpec eof() { return {MeasureKind::eof}; }
  static MeasureSpec concurrence() { return {MeasureKind::concurrence}; }
  static MeasureSpec negativity() { return {MeasureKind::negativity}; }

  bool entropy_based() const {
    return kind != MeasureKind::concurrence && kind != MeasureKind::negativity;
  }

  /// Parameter ranges for which the polygon theorems are stated.
  void validate() const {
    switch (kind) {
      case MeasureKind::q_concurrence:
        if (!(q >= 2.0)) throw invalid_input("q-concurrence: q must be >= 2");
        break;
      case MeasureKind::unified:
        if (!(r >= 1.0) || !(s >= 0.0))
          throw invalid_input("unified entanglement: need r >= 1 and s >= 0");
        break;
      case MeasureKind::renyi:
        if (!(r >= 0.0) || std::abs(r - 1.0) <= kLimitTol)
          throw invalid_input("Renyi entanglement: need r >= 0 and r != 1");
        break;
      case MeasureKind::tsallis:
        if (!(r > 1.0)) throw invalid_input("Tsallis entanglement: need r > 1");
        break;
      default:
        break;
    }
  }

  /// Entropy applied to the reduced state, for entropy-based kinds.
  EntropyParams entropy_params() const {
    switch (kind) {
      case MeasureKind::q_concurrence: return Fq{q};
      case MeasureKind::unified: return Unified{r, s};
      case MeasureKind::renyi: return Renyi{r};
      case MeasureKind::tsallis: return Tsallis{r};
      case MeasureKind::eof: return VonNeumann{};
      default: throw unsupported_measure("measure is not entropy-based");
    }
  }

  /// Stable token: qconc, unified, renyi, tsallis, eof, conc, neg.
  std::string token() const {
    switch (kind) {
      case MeasureKind::q_concurrence: return "qconc";
      case MeasureKind::unified: return "unified";
      case MeasureKind::renyi: return "renyi";
      case MeasureKind::tsallis: return "tsallis";
      case MeasureKind::eof: return "eof";
      case MeasureKind::concurrence: return "conc";
      case MeasureKind::negativity: return "neg";
    }
    return "?";
  }

  static MeasureSpec from_token(const std::string& tok, double q, double r, double s) {
    if (tok == "qconc") return q_concurrence(q);
    if (tok == "unified") return unified(r, s);
    if (tok == "renyi") return renyi(r);
    if (tok == "tsallis") return tsallis(r);
    if (tok == "eof") return eof();
    if (tok == "conc") return concurrence();
    if (tok == "neg") return negativity();
    throw invalid_input("unknown measure '" + tok +
                        "' (expected qconc, unified, renyi, tsallis, eof, conc, neg)");
  }

  /// e.g. "qconc(q=3)"
  std::string describe() const {
    std::ostringstream os;
    os.precision(17);
    os << token();
    switch (kind) {
      case MeasureKind::q_concurrence: os << "(q=" << q << ")"; break;
      case MeasureKind::unified: os << "(r=" << r << ",s=" << s << ")"; break;
      case MeasureKind::renyi:
      case MeasureKind::tsallis: os << "(r=" << r << ")"; break;
      default: break;
    }
    return os.str();
  }
};

/// One value E^{j|rest} per site.
using MarginalVector = std::vector<double>;

namespace detail {

inline std::size_t side_dim(const Dims& dims, const SiteSet& side) {
  std::size_t d = 1;
  for (auto s : side) d *= dims[s];
  return d;
}

}  // namespace detail

inline double measure_pure(const MultiQuditState& psi, const Bipartition& cut,
                           const MeasureSpec& spec) {
  cut.validate(psi.sites());
  spec.validate();

  if (spec.kind == MeasureKind::negativity) {
    const Matrix pt = partial_transpose(psi.density(), psi.dims(), cut.side_b);
    double trace_norm = 0.0;
    for (auto x : hermitian_eigenvalues(pt)) trace_norm += std::abs(x);
    return 0.5 * (trace_norm - 1.0);
  }

  const SiteSet& side =
      detail::side_dim(psi.dims(), cut.side_a) <= detail::side_dim(psi.dims(), cut.side_b)
          ? cut.side_a
          : cut.side_b;
  const Matrix rho = psi.reduced(side);

  if (spec.kind == MeasureKind::concurrence) {
    check_density(rho);
    const double purity = trace_power(rho, 2);
    return std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
  }
  return entropy(rho, spec.entropy_params());
}

/// Entropy of the reduced density of the side_a parties. Only entropy-based
/// measures are defined here; concurrence and negativity of a mixed network
/// would need a convex roof.
inline double measure_network(const NetworkState& net, const Bipartition& party_cut,
                              const MeasureSpec& spec) {
  if (!spec.entropy_based())
    throw unsupported_measure("measure_network: " + spec.token() +
                              " is not supported on network states");
  spec.validate();
  party_cut.validate(net.party_dims.size());
  const Matrix rho = partial_trace(net.density, net.party_dims, party_cut.side_a);
  return entropy(rho, spec.entropy_params());
}

inline MarginalVector marginal_vector(const MultiQuditState& psi, const MeasureSpec& spec) {
  MarginalVector out(psi.sites());
  for (std::size_t j = 0; j < psi.sites(); ++j)
    out[j] = measure_pure(psi, one_to_group(j, psi.sites()), spec);
  return out;
}

inline MarginalVector marginal_vector(const NetworkState& net, const MeasureSpec& spec) {
  const std::size_t n = net.party_dims.size();
  MarginalVector out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = measure_network(net, one_to_group(j, n), spec);
  return out;
}

/// Sum of the one-to-group marginals.
inline double total_entanglement(const MarginalVector& mv) {
  return std::accumulate(mv.begin(), mv.end(), 0.0);
}

}  // namespace entpoly
