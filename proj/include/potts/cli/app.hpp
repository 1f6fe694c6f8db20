#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "potts/io/json.hpp"
#include "potts/odes/special.hpp"
#include "potts/oracle/duality.hpp"
#include "potts/oracle/maps.hpp"
#include "potts/solver/identities.hpp"

namespace potts::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kFailure = 3 };

struct RunConfig {
  std::string model = "maps";
  int order = 10;
  std::vector<std::string> bindings;
  std::vector<std::string> checks;
  std::string out;
  std::string format = "json";
  std::string pivot = "first";
  std::string oracle = "two-catalytic";
  std::string reference;
  int emax = 3;
  std::vector<std::string> odes;
  std::string fixtures;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline const std::vector<std::string>& check_suites() {
  static const std::vector<std::string> s{"system", "identities", "odes", "oracle", "enumeration"};
  return s;
}

inline PivotRule parse_pivot(const std::string& s) {
  if (s == "first") return PivotRule::first_nonzero;
  if (s == "last") return PivotRule::last_nonzero;
  if (s == "fewest") return PivotRule::fewest_terms;
  throw UsageError("unknown pivot rule '" + s + "' (expected first, last or fewest)");
}

inline void validate(const RunConfig& cfg) {
  if (cfg.model != "all") parse_model(cfg.model);
  parse_pivot(cfg.pivot);
  if (cfg.order < 1) throw UsageError("--order must be at least 1");
  if (cfg.emax < 0 || cfg.emax > 4) throw UsageError("--emax must lie between 0 and 4");
  for (const auto& c : cfg.checks)
    if (std::find(check_suites().begin(), check_suites().end(), c) == check_suites().end())
      throw UsageError("unknown check suite '" + c + "'");
  if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "text")
    throw UsageError("--format must be json, csv or text");
}

namespace detail {

template <class C>
std::string residual_line(const std::string& suite, const std::string& label, const Series<C>& r) {
  std::ostringstream os;
  os << suite << " " << label << ": ";
  int v = r.valuation();
  if (v < 0) {
    os << "zero through " << name(r.var()) << "^" << r.order();
  } else {
    os << "NONZERO, first at " << name(r.var()) << "^" << v;
  }
  return os.str();
}

inline FracSeries substituted(const PolySeries& s, const Bindings& b) {
  potts::detail::Substituter sub(b);
  return s.map([&](const Poly& c) { return sub(c).reduce(); });
}

// Prints one line per coefficient and returns the first differing index, or -1.
inline int diff_table(std::ostream& out, const FracSeries& solver, const FracSeries& other) {
  const int n = std::min(solver.order(), other.order());
  int first = -1;
  out << "coefficient  diff\n";
  for (int k = 0; k <= n; ++k) {
    bool same = solver[k] == other[k];
    out << name(solver.var()) << "^" << k << "  " << (same ? "0" : "nonzero") << "\n";
    if (!same && first < 0) first = k;
  }
  return first;
}

inline std::string render(const SolverState& st, const std::optional<SpecializedState>& sp, const std::string& format) {
  if (format == "json") return (sp ? to_json(*sp) : to_json(st)).dump(2) + "\n";
  std::ostringstream os;
  const char* var = name(st.spec.size_var);
  auto emit = [&](const char* table, int i, std::size_t j, const std::string& value) {
    if (format == "csv") {
      os << table << "," << i << "," << j << "," << value << "\n";
    } else {
      os << table << "[" << var << "^" << i << "][x^" << j << "] = " << value << "\n";
    }
  };
  if (format == "csv") os << "# " << kFormatTag << "\ntable,order,xpower,coefficient\n";
  if (format == "text") os << "# " << kFormatTag << " " << name(st.spec.model) << " order " << st.order_done << "\n";
  auto tables = [&](const auto& p, const auto& q, const auto& r, const auto& main) {
    const std::pair<const char*, const decltype(p)&> all[] = {{"P", p}, {"Q", q}, {"R", r}};
    for (const auto& [tname, t] : all) {
      int rows = static_cast<int>(t.size());
      if (std::string(tname) == "R") rows = std::min(rows, st.order_done);
      else rows = std::min(rows, st.order_done + 1);
      for (int i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < t[static_cast<std::size_t>(i)].size(); ++j)
          emit(tname, i, j, to_string(t[static_cast<std::size_t>(i)][j]));
    }
    for (int k = 0; k <= main.order(); ++k) {
      if (format == "csv") {
        os << "main," << k << ",," << to_string(main[k]) << "\n";
      } else {
        os << "main[" << var << "^" << k << "] = " << to_string(main[k]) << "\n";
      }
    }
  };
  if (sp) {
    tables(sp->p, sp->q, sp->r, sp->main);
  } else {
    tables(st.p, st.q, st.r, st.main);
  }
  return os.str();
}

}  // namespace detail

inline int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  validate(cfg);
  const Model model = parse_model(cfg.model);
  SolverState st = solve(model, cfg.order, parse_pivot(cfg.pivot));
  Bindings bindings = parse_bindings(cfg.bindings);
  std::optional<SpecializedState> sp;
  if (!bindings.empty()) sp = specialize(st, bindings);
  out << "solved " << name(model) << " through " << name(st.spec.size_var) << "^" << st.order_done << "\n";

  bool all = true;
  auto report = [&](const std::string& suite, const std::string& label, const auto& series) {
    all = all && series.is_zero();
    out << detail::residual_line(suite, label, series) << "\n";
  };
  for (const auto& suite : cfg.checks) {
    if (suite == "system") {
      report(suite, "numerator", system_residual(st, st.order_done));
    } else if (suite == "identities") {
      for (const auto& r : nondifferential_residuals(st)) report(suite, r.name, r.residual);
    } else if (suite == "odes") {
      auto checks = check_special_odes(st, bindings, cfg.fixtures.empty() ? default_ode_dir() : cfg.fixtures);
      if (checks.empty()) throw UsageError("no special-case equation applies to these bindings");
      for (const auto& c : checks) report(suite, c.name, c.residual);
    } else if (suite == "oracle") {
      if (model == Model::maps) {
        const int n = st.order_done - 2;
        if (n < 0) throw UsageError("the two-catalytic comparison needs --order at least 2");
        FracSeries solver = detail::substituted(maps_m1(st), bindings);
        FracSeries oracle = detail::substituted(potts_m1(iterate_two_catalytic(n)), bindings);
        report(suite, "two-catalytic M1", solver - oracle);
        if (bindings.empty()) report(suite, "M1 duality", potts_duality_residual(maps_m1(st)));
      } else {
        FracSeries solver = tutte_series(st) * RatFrac(Poly::variable(sym::q));
        FracSeries oracle = to_frac_series(tutte_h(iterate_tutte_G(st.order_done)));
        report(suite, "tutte H = q T2 at nu=0", solver - oracle);
      }
    } else if (suite == "enumeration") {
      if (model != Model::maps) throw UsageError("the enumeration suite applies to maps only");
      const int e = std::min(cfg.emax, st.order_done - 2);
      if (e < 0) throw UsageError("the enumeration suite needs --order at least 2");
      FracSeries solver = detail::substituted(maps_m1(st).truncated(e), bindings);
      FracSeries oracle = detail::substituted(oracle_M1(e), bindings);
      report(suite, "rooted maps M1", solver - oracle);
    }
  }
  if (!cfg.out.empty()) {
    write_text_file(cfg.out, detail::render(st, sp, cfg.format));
    out << "wrote " << cfg.out << "\n";
  }
  return all ? kOk : kCheckFailed;
}

inline int cmd_crosscheck(const RunConfig& cfg, std::ostream& out) {
  validate(cfg);
  const Model model = parse_model(cfg.model);
  SolverState st = solve(model, cfg.order, parse_pivot(cfg.pivot));
  Bindings bindings = parse_bindings(cfg.bindings);
  FracSeries solver, other;
  std::string what = cfg.oracle;
  if (!cfg.reference.empty()) {
    what = "reference " + cfg.reference;
    solver = bindings.empty() ? to_frac_series(st.main) : specialize(st, bindings).main;
    other = read_series(read_json_file(cfg.reference));
    if (other.var() != solver.var()) throw UsageError("reference series uses a different size variable");
  } else if (cfg.oracle == "two-catalytic" || cfg.oracle == "enumeration") {
    if (model != Model::maps) throw UsageError("oracle '" + cfg.oracle + "' applies to maps only");
    int n = st.order_done - 2;
    if (cfg.oracle == "enumeration") n = std::min(n, cfg.emax);
    if (n < 0) throw UsageError("crosscheck needs --order at least 2");
    solver = detail::substituted(maps_m1(st).truncated(n), bindings);
    other = detail::substituted(cfg.oracle == "enumeration" ? oracle_M1(n) : potts_m1(iterate_two_catalytic(n)),
                                bindings);
  } else if (cfg.oracle == "tutte-G") {
    if (model != Model::triangulations) throw UsageError("oracle 'tutte-G' applies to triangulations only");
    solver = tutte_series(st) * RatFrac(Poly::variable(sym::q));
    other = to_frac_series(tutte_h(iterate_tutte_G(st.order_done)));
  } else {
    throw UsageError("unknown oracle '" + cfg.oracle + "' (expected two-catalytic, enumeration or tutte-G)");
  }
  out << "crosscheck " << name(model) << " solver vs " << what << "\n";
  int first = detail::diff_table(out, solver, other);
  if (first >= 0) {
    out << "first differing coefficient: " << name(solver.var()) << "^" << first << "\n";
    return kCheckFailed;
  }
  out << "all coefficients agree\n";
  return kOk;
}

inline int cmd_enumerate(const RunConfig& cfg, std::ostream& out) {
  validate(cfg);
  std::ostringstream os;
  auto maps = enumerate_rooted_maps(cfg.emax);
  std::vector<int> counts(static_cast<std::size_t>(cfg.emax + 1), 0);
  for (const auto& m : maps) {
    ++counts[static_cast<std::size_t>(m.edges())];
    os << "e=" << m.edges() << " v=" << vertex_count(m) << " f=" << face_count(m) << " df=" << root_face_degree(m)
       << " " << to_string(m) << " potts=" << to_string(fk_potts(m)) << "\n";
  }
  for (std::size_t e = 0; e < counts.size(); ++e) os << "rooted maps with " << e << " edges: " << counts[e] << "\n";
  if (cfg.out.empty()) {
    out << os.str();
  } else {
    write_text_file(cfg.out, os.str());
    for (std::size_t e = 0; e < counts.size(); ++e) out << "rooted maps with " << e << " edges: " << counts[e] << "\n";
    out << "wrote " << cfg.out << "\n";
  }
  return kOk;
}

inline int cmd_ode_check(const RunConfig& cfg, std::ostream& out) {
  validate(cfg);
  const std::string dir = cfg.fixtures.empty() ? default_ode_dir() : cfg.fixtures;
  std::vector<Model> models;
  if (cfg.model == "all") {
    models = {Model::maps, Model::triangulations};
  } else {
    models = {parse_model(cfg.model)};
  }
  bool all = true;
  for (Model m : models) {
    std::vector<std::string> names = applicable_odes(m);
    if (!cfg.odes.empty()) {
      std::vector<std::string> keep;
      for (const auto& n : names)
        if (std::find(cfg.odes.begin(), cfg.odes.end(), n) != cfg.odes.end()) keep.push_back(n);
      names = keep;
    }
    if (names.empty()) continue;
    SolverState st = solve(m, cfg.order, parse_pivot(cfg.pivot));
    for (const auto& n : names) {
      OdeCheck c = run_ode(n, st, dir);
      all = all && c.pass;
      out << detail::residual_line("ode", c.name, c.residual) << "\n";
    }
  }
  for (const auto& n : cfg.odes)
    if (std::find(ode_fixture_names().begin(), ode_fixture_names().end(), n) == ode_fixture_names().end())
      throw UsageError("unknown special-case equation '" + n + "'");
  return all ? kOk : kCheckFailed;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Potts generating functions of planar maps and triangulations"};
  app.set_config("--config", "", "Read options from a TOML or INI file (command-line flags win)");
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub, int default_order) {
    cfg.order = default_order;
    sub->add_option("--model", cfg.model, "maps or triangulations")->capture_default_str();
    sub->add_option("--order", cfg.order, "Truncation order in the size variable")
        ->envname("POTTS_ORDER")
        ->capture_default_str();
    sub->add_option("--pivot", cfg.pivot, "Pivot rule of the linear solves: first, last or fewest")
        ->capture_default_str();
  };

  auto* solve_cmd = app.add_subcommand("solve", "Solve the differential system order by order");
  add_common(solve_cmd, 10);
  solve_cmd->add_option("--specialize", cfg.bindings, "Parameter bindings such as q=4, nu=0, w=1/beta");
  solve_cmd->add_option("--check", cfg.checks, "Check suites: system, identities, odes, oracle, enumeration")
      ->delimiter(',');
  solve_cmd->add_option("--out", cfg.out, "Write the tables and main series to this file");
  solve_cmd->add_option("--format", cfg.format, "json, csv or text")->capture_default_str();
  solve_cmd->add_option("--emax", cfg.emax, "Edge bound of the enumeration suite")->capture_default_str();
  solve_cmd->add_option("--fixtures", cfg.fixtures, "Directory of ODE fixture files");

  auto* cross_cmd = app.add_subcommand("crosscheck", "Compare the solver with an independent computation");
  add_common(cross_cmd, 10);
  cross_cmd->add_option("--oracle", cfg.oracle, "two-catalytic, enumeration or tutte-G")->capture_default_str();
  cross_cmd->add_option("--reference", cfg.reference, "Compare the main series with a saved series file");
  cross_cmd->add_option("--specialize", cfg.bindings, "Parameter bindings applied to both sides");
  cross_cmd->add_option("--emax", cfg.emax, "Edge bound of the enumeration oracle")->capture_default_str();

  auto* enum_cmd = app.add_subcommand("enumerate", "List rooted planar maps with their Potts polynomials");
  enum_cmd->add_option("--emax", cfg.emax, "Largest edge count (at most 4)")->capture_default_str();
  enum_cmd->add_option("--out", cfg.out, "Write the list to this file");

  auto* ode_cmd = app.add_subcommand("ode-check", "Residuals of the special-case differential equations");
  cfg.order = 8;
  ode_cmd->add_option("--model", cfg.model, "maps, triangulations or all")->capture_default_str();
  ode_cmd->add_option("--order", cfg.order, "Truncation order of the solve")->envname("POTTS_ORDER");
  ode_cmd->add_option("--pivot", cfg.pivot, "Pivot rule of the linear solves")->capture_default_str();
  ode_cmd->add_option("--ode", cfg.odes, "Restrict to these equations")->delimiter(',');
  ode_cmd->add_option("--fixtures", cfg.fixtures, "Directory of ODE fixture files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  // Each subcommand has its own default order unless the user gave one.
  auto* active = app.get_subcommands().front();
  if (active == ode_cmd && ode_cmd->count("--order") == 0) cfg.order = 8;
  if ((active == solve_cmd || active == cross_cmd) && active->count("--order") == 0) cfg.order = 10;
  if (active == ode_cmd && ode_cmd->count("--model") == 0) cfg.model = "all";
  if (active == enum_cmd) cfg.model = "maps";

  try {
    if (active == solve_cmd) return cmd_solve(cfg, out);
    if (active == cross_cmd) return cmd_crosscheck(cfg, out);
    if (active == enum_cmd) return cmd_enumerate(cfg, out);
    return cmd_ode_check(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace potts::cli
