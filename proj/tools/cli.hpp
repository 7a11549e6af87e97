#pragma once

// Command-line front end. Exit codes:
//   0 success, 1 usage error, 2 numerical-input error,
//   3 an inequality check (or reproduction) came out violated.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "entpoly/entpoly.hpp"

namespace entpoly::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitViolation = 3;

namespace detail {

struct MeasureFlags {
  std::string token = "qconc";
  double q = 2.0;
  double r = 2.0;
  double s = 1.0;

  void attach(CLI::App* app) {
    app->add_option("--measure", token, "qconc|unified|renyi|tsallis|eof|conc|neg");
    app->add_option("--q", q, "q-concurrence order (>= 2)");
    app->add_option("--r", r, "entropy order r");
    app->add_option("--s", s, "unified-entropy parameter s");
  }
  MeasureSpec spec() const { return MeasureSpec::from_token(token, q, r, s); }
};

inline Dims parse_dims(const std::string& text) {
  Dims dims;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw invalid_input("dims '" + text + "': expected comma-separated integers");
    dims.push_back(std::stoul(tok));
  }
  check_dims(dims);
  return dims;
}

inline std::string fmt(double x) { return format_double(x); }

/// Cut labels contain commas, so they are quoted in CSV output.
inline std::string quoted(const Bipartition& cut) { return '"' + cut.to_string() + '"'; }

inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw invalid_input("cannot write '" + path + "'");
  f << text;
}

inline void put_inequality(std::ostream& os, const std::string& prefix,
                           const InequalityResult& r) {
  os << prefix << fmt(r.lhs) << ',' << fmt(r.rhs) << ',' << fmt(r.margin) << ','
     << (r.satisfied ? "true" : "false") << '\n';
}

inline std::string render_report(const ReproReport& rep, bool include_grid) {
  std::ostringstream os;
  os << "# target=" << rep.target << '\n';
  for (const auto& [k, v] : rep.header) os << "# " << k << '=' << v << '\n';
  os << "# max_abs_diff=" << fmt(rep.max_diff()) << '\n';
  os << "# pass=" << (rep.passed() ? "true" : "false") << '\n';
  if (!rep.rows.empty()) {
    os << "quantity,closed_form,computed,abs_diff\n";
    for (const auto& r : rep.rows)
      os << r.quantity << ',' << fmt(r.closed_form) << ',' << fmt(r.computed) << ','
         << fmt(r.diff()) << '\n';
  }
  if (!rep.checks.empty()) {
    os << "\ncheck,lhs,rhs,margin,satisfied\n";
    for (const auto& c : rep.checks) put_inequality(os, c.label + ",", c.result);
  }
  if (include_grid && !rep.grid.empty()) {
    os << '\n';
    write_scan_csv(os, rep.grid);
  }
  return os.str();
}

}  // namespace detail

/// Runs one invocation; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"entpoly: parameterized entanglement measures and polygon inequalities"};
  app.require_subcommand(1);

  std::string state_path;
  std::string cut_text;
  std::vector<std::string> cut_list;
  double tol = kDefaultTol;
  std::uint64_t seed = 0;
  std::string out_path;
  detail::MeasureFlags mflags;

  auto* measure = app.add_subcommand("measure", "entanglement across one bipartition");
  measure->add_option("--state", state_path, "state file")->required();
  measure->add_option("--cut", cut_text, "bipartition, e.g. \"0|1,2\"")->required();
  mflags.attach(measure);

  auto* marginals = app.add_subcommand("marginals", "one-to-group marginal vector");
  marginals->add_option("--state", state_path, "state file")->required();
  detail::MeasureFlags mflags_marg;
  mflags_marg.attach(marginals);

  auto* check = app.add_subcommand("check", "inequality checks on one state");
  std::string check_kind;
  check->add_option("kind", check_kind, "polygon|triangle|bipartition|renyi-mixed")
      ->required()
      ->check(CLI::IsMember({"polygon", "triangle", "bipartition", "renyi-mixed"}));
  check->add_option("--state", state_path, "state file")->required();
  check->add_option("--cut", cut_list, "bipartition(s) for the bipartition check");
  check->add_option("--tol", tol, "violation tolerance");
  detail::MeasureFlags mflags_check;
  mflags_check.attach(check);

  auto* indicator = app.add_subcommand("indicator", "tau or tau-hat indicator");
  std::string ind_kind;
  indicator->add_option("kind", ind_kind, "tau|tau-hat")
      ->required()
      ->check(CLI::IsMember({"tau", "tau-hat"}));
  indicator->add_option("--state", state_path, "state file")->required();
  indicator->add_option("--cut", cut_list, "cuts for tau-hat (default: all with |A| >= 2)");
  detail::MeasureFlags mflags_ind;
  mflags_ind.attach(indicator);

  auto* reproduce = app.add_subcommand("reproduce", "recompute a worked example or figure");
  std::string target;
  std::size_t grid = 0, d = 3, m = 4, n = 3, trials = 1000;
  unsigned workers = 1;
  double rq = 2.0, rr = 2.0, rs = 1.0;
  reproduce->add_option("target", target)->required()->check(CLI::IsMember(reproduce_targets()));
  reproduce->add_option("--grid", grid, "grid resolution (figures)");
  reproduce->add_option("--q", rq);
  reproduce->add_option("--r", rr);
  reproduce->add_option("--s", rs);
  reproduce->add_option("--d", d);
  reproduce->add_option("--m", m);
  reproduce->add_option("--n", n, "parties (example4)");
  reproduce->add_option("--trials", trials, "trials per row (table1)");
  reproduce->add_option("--seed", seed);
  reproduce->add_option("--workers", workers);
  reproduce->add_option("--out", out_path, "write the grid CSV / table report here");

  auto* fuzz_cmd = app.add_subcommand("fuzz", "random search for polygon violations");
  std::string dims_text;
  std::size_t record_worst = 5;
  fuzz_cmd->add_option("--dims", dims_text, "e.g. 3,3,3")->required();
  fuzz_cmd->add_option("--trials", trials);
  fuzz_cmd->add_option("--seed", seed);
  fuzz_cmd->add_option("--tol", tol);
  fuzz_cmd->add_option("--record-worst", record_worst);
  fuzz_cmd->add_option("--workers", workers);
  fuzz_cmd->add_option("--out", out_path, "report file (JSON)");
  detail::MeasureFlags mflags_fuzz;
  mflags_fuzz.attach(fuzz_cmd);

  auto* scan = app.add_subcommand("scan", "indicator over a parameter grid");
  std::string family;
  std::size_t scan_grid = 50;
  scan->add_option("--family", family, "generalized_ghz3|w_interp|star4_q|star4_rs")->required();
  scan->add_option("--grid", scan_grid);
  scan->add_option("--seed", seed);
  scan->add_option("--out", out_path, "CSV file");
  detail::MeasureFlags mflags_scan;
  mflags_scan.token = "eof";
  mflags_scan.attach(scan);

  auto* sample = app.add_subcommand("sample", "write a state file");
  std::string kind = "haar";
  double theta = 0.0, phi = 0.0;
  sample->add_option("--kind", kind, "haar|ghz|w|star4|generalized_ghz3|w_interp")
      ->check(CLI::IsMember({"haar", "ghz", "w", "star4", "generalized_ghz3", "w_interp"}));
  sample->add_option("--dims", dims_text, "dimensions (haar)");
  sample->add_option("--seed", seed);
  sample->add_option("--d", d, "local dimension (ghz)");
  sample->add_option("--m", m, "particles (ghz)");
  sample->add_option("--theta", theta);
  sample->add_option("--phi", phi);
  sample->add_option("--out", out_path, "state file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (measure->parsed()) {
      const auto psi = read_state_file(state_path);
      const auto cut = Bipartition::parse(cut_text);
      const auto spec = mflags.spec();
      const double value = measure_pure(psi, cut, spec);
      out << "# state=" << state_path << '\n'
          << "cut,measure,value\n"
          << detail::quoted(cut) << ',' << spec.describe() << ',' << detail::fmt(value) << '\n';
      return kExitOk;
    }

    if (marginals->parsed()) {
      const auto psi = read_state_file(state_path);
      const auto spec = mflags_marg.spec();
      const auto mv = marginal_vector(psi, spec);
      out << "# state=" << state_path << '\n'
          << "# measure=" << spec.describe() << '\n'
          << "# total=" << detail::fmt(total_entanglement(mv)) << '\n'
          << "site,value\n";
      for (std::size_t j = 0; j < mv.size(); ++j) out << j << ',' << detail::fmt(mv[j]) << '\n';
      return kExitOk;
    }

    if (check->parsed()) {
      const auto psi = read_state_file(state_path);
      bool ok = true;
      out << "# state=" << state_path << '\n' << "# tol=" << detail::fmt(tol) << '\n';
      if (check_kind == "polygon") {
        const auto spec = mflags_check.spec();
        const auto mv = marginal_vector(psi, spec);
        out << "# measure=" << spec.describe() << '\n' << "site,lhs,rhs,margin,satisfied\n";
        for (std::size_t j = 0; j < mv.size(); ++j) {
          const auto r = polygon_check(mv, j, tol);
          ok = ok && r.satisfied;
          detail::put_inequality(out, std::to_string(j) + ",", r);
        }
      } else if (check_kind == "triangle") {
        const auto spec = mflags_check.spec();
        const auto mv = marginal_vector(psi, spec);
        out << "# measure=" << spec.describe() << '\n'
            << "site,bound,lhs,rhs,margin,satisfied\n";
        for (std::size_t i = 0; i < mv.size(); ++i) {
          const auto r = triangle_check(mv, i, tol);
          ok = ok && r.satisfied();
          detail::put_inequality(out, std::to_string(i) + ",lower,", r.lower);
          detail::put_inequality(out, std::to_string(i) + ",upper,", r.upper);
        }
      } else if (check_kind == "renyi-mixed") {
        const double r = mflags_check.r;
        out << "# r=" << detail::fmt(r) << '\n' << "site,bound,lhs,rhs,margin,satisfied\n";
        for (std::size_t i = 0; i < psi.sites() && i < 3; ++i) {
          const auto res = renyi_mixed_check(psi, i, r, tol);
          ok = ok && res.satisfied();
          detail::put_inequality(out, std::to_string(i) + ",lower,", res.lower);
          detail::put_inequality(out, std::to_string(i) + ",upper,", res.upper);
        }
      } else {
        const auto spec = mflags_check.spec();
        std::vector<Bipartition> cuts;
        for (const auto& c : cut_list) cuts.push_back(Bipartition::parse(c));
        if (cuts.empty()) cuts = default_tau_hat_cuts(psi.sites());
        out << "# measure=" << spec.describe() << '\n' << "cut,lhs,rhs,margin,satisfied\n";
        for (const auto& c : cuts) {
          const auto r = bipartition_check(psi, c, spec, tol);
          ok = ok && r.satisfied;
          detail::put_inequality(out, detail::quoted(c) + ",", r);
        }
      }
      return ok ? kExitOk : kExitViolation;
    }

    if (indicator->parsed()) {
      const auto psi = read_state_file(state_path);
      const auto spec = mflags_ind.spec();
      out << "# state=" << state_path << '\n' << "# measure=" << spec.describe() << '\n';
      if (ind_kind == "tau") {
        const auto res = tau_indicator(psi, spec);
        out << "indicator,value,argmin_site\n"
            << "tau," << detail::fmt(res.value) << ',' << res.argmin << '\n';
      } else {
        std::vector<Bipartition> cuts;
        for (const auto& c : cut_list) cuts.push_back(Bipartition::parse(c));
        if (cuts.empty()) cuts = default_tau_hat_cuts(psi.sites());
        const auto res = tau_hat_indicator(psi, cuts, spec);
        out << "indicator,value,argmin_cut\n"
            << "tau-hat," << detail::fmt(res.value) << ',' << detail::quoted(cuts[res.argmin])
            << '\n';
      }
      return kExitOk;
    }

    if (reproduce->parsed()) {
      ReproReport rep;
      if (target == "example1") rep = reproduce_example1();
      else if (target == "example2") rep = reproduce_example2(rq, rr, rs);
      else if (target == "example3") rep = reproduce_example3(d, m, rq, rr, rs);
      else if (target == "example4") rep = reproduce_example4(n, rq, rr, rs);
      else if (target == "example5") rep = reproduce_example5(rq, rr, rs);
      else if (target == "example6") rep = reproduce_example6(rq, rr, rs);
      else if (target == "fig2") rep = reproduce_fig2(grid ? grid : 100);
      else if (target == "fig4a") rep = reproduce_fig4a(grid ? grid : 50);
      else if (target == "fig4b") rep = reproduce_fig4b(grid ? grid : 30);
      else rep = reproduce_table1(trials, seed, workers);
      if (std::none_of(rep.header.begin(), rep.header.end(),
                       [](const auto& kv) { return kv.first == "seed"; }))
        rep.header.emplace_back("seed", std::to_string(seed));

      if (target == "table1") {
        nlohmann::json doc = {{"target", rep.target},
                              {"seed", seed},
                              {"trials", trials},
                              {"rows", rep.extra}};
        detail::write_output(out_path, doc.dump(2) + "\n", out);
        if (!out_path.empty()) out << detail::render_report(rep, false);
      } else if (!rep.grid.empty() && !out_path.empty()) {
        std::ostringstream csv;
        write_scan_csv(csv, rep.grid);
        detail::write_output(out_path, csv.str(), out);
        out << detail::render_report(rep, false);
      } else {
        out << detail::render_report(rep, true);
      }
      return rep.passed() ? kExitOk : kExitViolation;
    }

    if (fuzz_cmd->parsed()) {
      SearchConfig cfg;
      cfg.dims = detail::parse_dims(dims_text);
      cfg.spec = mflags_fuzz.spec();
      cfg.trials = trials;
      cfg.seed = seed;
      cfg.tol = tol;
      cfg.record_worst = record_worst;
      cfg.workers = workers;
      const auto rep = fuzz_polygon(cfg);
      detail::write_output(out_path, rep.to_json().dump(2) + "\n", out);
      if (!out_path.empty())
        out << "# seed=" << seed << '\n'
            << "trials_run,violations,min_margin\n"
            << rep.trials_run << ',' << rep.violations << ',' << detail::fmt(rep.min_margin)
            << '\n';
      // Violations found by a search are data, not a failure.
      return kExitOk;
    }

    if (scan->parsed()) {
      const auto rows = grid_scan(scan_family_from_name(family), scan_grid, mflags_scan.spec());
      std::ostringstream csv;
      csv << "# family=" << family << '\n'
          << "# measure=" << mflags_scan.spec().describe() << '\n'
          << "# seed=" << seed << '\n';
      write_scan_csv(csv, rows);
      detail::write_output(out_path, csv.str(), out);
      return kExitOk;
    }

    if (sample->parsed()) {
      auto make = [&]() -> MultiQuditState {
        if (kind == "ghz") return ghz(d, m);
        if (kind == "w") return w_qutrit();
        if (kind == "star4") return star4();
        if (kind == "generalized_ghz3") return generalized_ghz3(theta, phi);
        if (kind == "w_interp") return w_interp(theta, phi);
        if (dims_text.empty()) throw invalid_input("sample: --dims is required for haar");
        return haar_random(detail::parse_dims(dims_text), seed);
      };
      write_state_file(out_path, make());
      out << "# seed=" << seed << '\n' << "wrote " << out_path << '\n';
      return kExitOk;
    }
  } catch (const invalid_input& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const unsupported_measure& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitUsage;
}

}  // namespace entpoly::cli
