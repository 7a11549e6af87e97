#pragma once

// Randomized and grid searches over the polygon inequalities.
//
// Trial t of a run with master seed S samples haar_random(dims, mix64(S, t)).
// Per-trial results are stored by trial index and aggregated in index order,
// so a report depends only on the configuration, never on the worker count.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "entpoly/errors.hpp"
#include "entpoly/inequalities.hpp"
#include "entpoly/measures.hpp"
#include "entpoly/state_io.hpp"
#include "entpoly/states.hpp"

namespace entpoly {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of trial `index` under `master`.
inline std::uint64_t mix64(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index));
}

struct SearchConfig {
  Dims dims;
  MeasureSpec spec;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
  std::size_t record_worst = 5;
  unsigned workers = 1;  // does not affect results

  void validate() const {
    check_dims(dims);
    spec.validate();
    if (trials < 1) throw invalid_input("search: trials must be >= 1");
    if (!(tol > 0.0)) throw invalid_input("search: tol must be > 0");
    if (workers < 1) throw invalid_input("search: workers must be >= 1");
  }
};

/// 64 uniform bins over [-0.1, 1.0]; out-of-range margins land in the end bins.
struct MarginHistogram {
  static constexpr double kLo = -0.1;
  static constexpr double kHi = 1.0;
  static constexpr std::size_t kBins = 64;
  std::vector<std::size_t> counts = std::vector<std::size_t>(kBins, 0);

  void add(double margin) {
    if (std::isnan(margin)) return;
    const double pos = (margin - kLo) / (kHi - kLo) * double(kBins);
    const auto bin = static_cast<std::size_t>(std::clamp(pos, 0.0, double(kBins - 1)));
    ++counts[bin];
  }
};

struct WorstState {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t site = 0;  // where the trial's smallest margin occurred
  double margin = 0.0;
  MultiQuditState state;
};

struct ViolationReport {
  std::string check;  // which inequality was fuzzed, e.g. "polygon"
  SearchConfig config;
  std::size_t trials_run = 0;
  std::size_t violations = 0;  // margins below -tol, over all (trial, site)
  double min_margin = std::numeric_limits<double>::infinity();
  std::vector<WorstState> worst_states;  // ascending margin
  MarginHistogram histogram;

  nlohmann::json to_json() const {
    nlohmann::json worst = nlohmann::json::array();
    for (const auto& w : worst_states)
      worst.push_back({{"trial", w.trial},
                       {"seed", w.seed},
                       {"site", w.site},
                       {"margin", w.margin},
                       {"state", state_to_json(w.state)}});
    return {{"check", check},
            {"config",
             {{"dims", config.dims},
              {"measure", config.spec.token()},
              {"measure_params", config.spec.describe()},
              {"trials", config.trials},
              {"seed", config.seed},
              {"tol", config.tol},
              {"record_worst", config.record_worst}}},
            {"trials_run", trials_run},
            {"violations", violations},
            {"min_margin", min_margin},
            {"worst_states", std::move(worst)},
            {"histogram",
             {{"lo", MarginHistogram::kLo},
              {"hi", MarginHistogram::kHi},
              {"bins", MarginHistogram::kBins},
              {"counts", histogram.counts}}}};
  }
};

/// One labelled margin produced by a check on one state.
struct SiteMargin {
  std::size_t site;
  double margin;
};

using StateCheck = std::function<std::vector<SiteMargin>(const MultiQuditState&)>;

/// Runs `check` on cfg.trials Haar-random states and aggregates the margins.
inline ViolationReport fuzz(const SearchConfig& cfg, const std::string& name,
                            const StateCheck& check) {
  cfg.validate();
  std::vector<std::vector<SiteMargin>> per_trial(cfg.trials);

  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t)
      per_trial[t] = check(haar_random(cfg.dims, mix64(cfg.seed, t)));
  };
  const std::size_t workers = std::min<std::size_t>(cfg.workers, cfg.trials);
  if (workers <= 1) {
    run_range(0, cfg.trials);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t chunk = (cfg.trials + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          run_range(std::min(cfg.trials, w * chunk), std::min(cfg.trials, (w + 1) * chunk));
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  ViolationReport rep;
  rep.check = name;
  rep.config = cfg;
  rep.trials_run = cfg.trials;
  struct TrialWorst {
    double margin;
    std::size_t trial, site;
  };
  std::vector<TrialWorst> worst;
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    TrialWorst tw{std::numeric_limits<double>::infinity(), t, 0};
    for (const auto& m : per_trial[t]) {
      rep.histogram.add(m.margin);
      if (m.margin < -cfg.tol) ++rep.violations;
      rep.min_margin = std::min(rep.min_margin, m.margin);
      if (m.margin < tw.margin) tw = {m.margin, t, m.site};
    }
    if (!per_trial[t].empty()) worst.push_back(tw);
  }
  std::stable_sort(worst.begin(), worst.end(),
                   [](const TrialWorst& a, const TrialWorst& b) { return a.margin < b.margin; });
  worst.resize(std::min(worst.size(), cfg.record_worst));
  for (const auto& w : worst) {
    const auto seed = mix64(cfg.seed, w.trial);
    rep.worst_states.push_back({w.trial, seed, w.site, w.margin, haar_random(cfg.dims, seed)});
  }
  return rep;
}

/// Polygon margins sum_{k != j} E^k - E^j at every site j.
inline std::vector<SiteMargin> polygon_margins(const MultiQuditState& psi,
                                               const MeasureSpec& spec, double tol) {
  const auto mv = marginal_vector(psi, spec);
  std::vector<SiteMargin> out;
  for (std::size_t j = 0; j < mv.size(); ++j) out.push_back({j, polygon_check(mv, j, tol).margin});
  return out;
}

inline ViolationReport fuzz_polygon(const SearchConfig& cfg) {
  return fuzz(cfg, "polygon", [&](const MultiQuditState& psi) {
    return polygon_margins(psi, cfg.spec, cfg.tol);
  });
}

// --- grid scans ------------------------------------------------------------

enum class ScanFamily {
  generalized_ghz3,  // (theta in [0,pi], phi in [0,2pi]) -> tau
  w_interp,          // (theta in [0,pi/2], phi in [0,2pi]) -> tau
  star4_q,           // q in [2,9] -> tau-hat of q-concurrence
  star4_rs,          // (r in [1,9], s in [0,10]) -> tau-hat of unified entanglement
};

inline ScanFamily scan_family_from_name(const std::string& name) {
  if (name == "generalized_ghz3") return ScanFamily::generalized_ghz3;
  if (name == "w_interp") return ScanFamily::w_interp;
  if (name == "star4_q") return ScanFamily::star4_q;
  if (name == "star4_rs") return ScanFamily::star4_rs;
  throw invalid_input("unknown scan family '" + name +
                      "' (expected generalized_ghz3, w_interp, star4_q, star4_rs)");
}

struct ScanRow {
  double param1 = 0.0;
  double param2 = 0.0;
  double value = 0.0;
};

/// lo + (hi - lo) * i / (n - 1), endpoints included.
inline double grid_point(double lo, double hi, std::size_t i, std::size_t n) {
  return n <= 1 ? lo : lo + (hi - lo) * double(i) / double(n - 1);
}

/// Rows ordered with param1 outer, param2 inner. One-parameter families
/// report param2 = 0. The star4 families set the measure parameters
/// themselves and ignore `spec`.
inline std::vector<ScanRow> grid_scan(ScanFamily family, std::size_t grid,
                                      const MeasureSpec& spec) {
  if (grid < 1) throw invalid_input("grid_scan: grid must be >= 1");
  constexpr double pi = std::numbers::pi;
  std::vector<ScanRow> rows;
  switch (family) {
    case ScanFamily::generalized_ghz3:
    case ScanFamily::w_interp: {
      const double theta_hi = family == ScanFamily::generalized_ghz3 ? pi : pi / 2;
      for (std::size_t i = 0; i < grid; ++i)
        for (std::size_t j = 0; j < grid; ++j) {
          const double th = grid_point(0.0, theta_hi, i, grid);
          const double ph = grid_point(0.0, 2 * pi, j, grid);
          const auto psi = family == ScanFamily::generalized_ghz3 ? generalized_ghz3(th, ph)
                                                                  : w_interp(th, ph);
          rows.push_back({th, ph, tau_indicator(psi, spec).value});
        }
      break;
    }
    case ScanFamily::star4_q: {
      const auto psi = star4();
      for (std::size_t i = 0; i < grid; ++i) {
        const double q = grid_point(2.0, 9.0, i, grid);
        rows.push_back({q, 0.0, tau_hat_indicator(psi, {}, MeasureSpec::q_concurrence(q)).value});
      }
      break;
    }
    case ScanFamily::star4_rs: {
      const auto psi = star4();
      for (std::size_t i = 0; i < grid; ++i)
        for (std::size_t j = 0; j < grid; ++j) {
          const double r = grid_point(1.0, 9.0, i, grid);
          const double s = grid_point(0.0, 10.0, j, grid);
          rows.push_back({r, s, tau_hat_indicator(psi, {}, MeasureSpec::unified(r, s)).value});
        }
      break;
    }
  }
  return rows;
}

/// %.17g, which round-trips every double.
inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
  os << "param1,param2,value\n";
  for (const auto& r : rows)
    os << format_double(r.param1) << ',' << format_double(r.param2) << ','
       << format_double(r.value) << '\n';
}

}  // namespace entpoly
