// casipol - command-line front end: parameter sweeps and reports for
// atom-atom and atom-wall Casimir-Polder quantities, emitting deterministic
// CSV/JSON for plotting and golden-file testing.
//
// Exit codes: 0 success, 1 selftest failure, 2 invalid spec, 3 every grid
// point failed numerically.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "casipol/batch.hpp"
#include "casipol/fluctuations.hpp"
#include "casipol/pair_potential.hpp"
#include "casipol/special_functions.hpp"
#include "casipol/sweep.hpp"
#include "casipol/units.hpp"
#include "casipol/wall_force.hpp"

namespace {

using namespace casipol;

constexpr double kPi = 3.14159265358979323846;

struct ScanOptions {
  std::string quantity;
  std::string var;
  double min = 0.0;
  double max = 0.0;
  int count = 0;
  std::string spacing;
  std::vector<std::string> fix;
  std::string format;
  std::string units;
  std::string out;
  std::string config;
};

void add_scan_flags(CLI::App* cmd, ScanOptions& opt) {
  cmd->add_option("--quantity", opt.quantity,
                  "quantity to evaluate (pair_potential, pair_force, wall_force_ground, "
                  "wall_force_excited, wall_energy, fluctuation)");
  cmd->add_option("--var", opt.var, "swept parameter name");
  cmd->add_option("--min", opt.min, "smallest swept value (reduced units)");
  cmd->add_option("--max", opt.max, "largest swept value (reduced units)");
  cmd->add_option("--count", opt.count, "number of grid points (>= 2)");
  cmd->add_option("--spacing", opt.spacing, "grid spacing: linear or log");
  cmd->add_option("--fix", opt.fix, "fix a parameter, KEY=VAL (repeatable)")
      ->take_all();
  cmd->add_option("--format", opt.format, "output format: csv or json");
  cmd->add_option("--units", opt.units, "output units: reduced or si");
  cmd->add_option("--out", opt.out, "output path (default: standard output)");
  cmd->add_option("--config", opt.config,
                  "JSON spec file; command-line flags override its entries");
}

std::pair<std::string, std::string> split_fix(const std::string& kv) {
  const auto pos = kv.find('=');
  if (pos == std::string::npos || pos == 0)
    throw SpecError("--fix expects KEY=VAL, got '" + kv + "'");
  return {kv.substr(0, pos), kv.substr(pos + 1)};
}

double parse_number(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw SpecError("--fix " + key + ": '" + text + "' is not a number");
  }
}

SweepSpec build_spec(const CLI::App* cmd, const ScanOptions& opt, const SweepSpec& dflt) {
  SweepSpec spec = dflt;
  if (!opt.config.empty()) {
    std::ifstream in(opt.config);
    if (!in) throw SpecError("cannot open config file: " + opt.config);
    std::stringstream buf;
    buf << in.rdbuf();
    spec = spec_from_json(buf.str());
  }
  if (cmd->count("--quantity")) spec.quantity = quantity_from_name(opt.quantity);
  if (cmd->count("--var")) spec.variable = opt.var;
  if (cmd->count("--min")) spec.min = opt.min;
  if (cmd->count("--max")) spec.max = opt.max;
  if (cmd->count("--count")) spec.count = opt.count;
  if (cmd->count("--spacing")) {
    if (opt.spacing == "log")
      spec.spacing = Spacing::log;
    else if (opt.spacing == "linear")
      spec.spacing = Spacing::linear;
    else
      throw SpecError("unknown spacing: " + opt.spacing);
  }
  if (cmd->count("--format")) {
    if (opt.format == "json")
      spec.format = OutputFormat::json;
    else if (opt.format == "csv")
      spec.format = OutputFormat::csv;
    else
      throw SpecError("unknown format: " + opt.format);
  }
  if (cmd->count("--units")) {
    if (opt.units == "si")
      spec.units = UnitsMode::si;
    else if (opt.units == "reduced")
      spec.units = UnitsMode::reduced;
    else
      throw SpecError("unknown units: " + opt.units);
  }
  for (const std::string& kv : opt.fix) {
    const auto [key, val] = split_fix(kv);
    if (key == "state") {
      if (val == "ground")
        spec.state = AtomicState::ground;
      else if (val == "excited")
        spec.state = AtomicState::excited;
      else
        throw SpecError("--fix state must be ground or excited");
    } else {
      spec.fixed[key] = parse_number(key, val);
    }
  }
  return spec;
}

int emit(const SweepResult& result, const std::string& out_path) {
  std::ostringstream body;
  if (result.spec.format == OutputFormat::json)
    write_json(result, body);
  else
    write_csv(result, body);
  if (out_path.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 2;
    }
    out << body.str();
  }
  if (result.failures == result.rows.size() && !result.rows.empty()) {
    std::cerr << "error: every grid point failed numerically\n";
    return 3;
  }
  return 0;
}

int run_scan(const CLI::App* cmd, const ScanOptions& opt, const SweepSpec& dflt) {
  const SweepSpec spec = build_spec(cmd, opt, dflt);
  return emit(run_sweep(spec), opt.out);
}

// ---------------------------------------------------------------------------

struct ReportOptions {
  std::vector<std::string> fix;
  std::string format;
  std::string out;
};

int run_fluctuation_report(const ReportOptions& opt) {
  std::map<std::string, double> p{{"d", 1.0}, {"T", 1.0}, {"mu_sq", 1.5}, {"k0", 1.0}};
  for (const std::string& kv : opt.fix) {
    const auto [key, val] = split_fix(kv);
    if (!p.count(key))
      throw SpecError("fluctuation-report: unknown parameter '" + key +
                      "' (expected d, T, mu_sq, k0)");
    p[key] = parse_number(key, val);
  }
  const AtomSpec atom = make_two_level_atom(p["mu_sq"], p["k0"]);
  const InstrumentSpec instrument{p["T"]};
  const FeasibilityReport rep = feasibility_report(p["d"], instrument, atom);
  const UnitSystem si;

  std::ostringstream body;
  if (opt.format == "json") {
    nlohmann::json j;
    j["d"] = rep.fluctuation.d;
    j["d_si_m"] = to_si(rep.fluctuation.d, QuantityKind::length, si);
    j["T"] = rep.fluctuation.T;
    j["T_si_s"] = to_si(rep.fluctuation.T, QuantityKind::time, si);
    j["x"] = rep.fluctuation.x;
    j["regime"] = std::string(regime_name(rep.fluctuation.regime));
    j["relative_fluctuation"] = {{"lo", rep.fluctuation.rf_lo},
                                 {"hi", rep.fluctuation.rf_hi}};
    j["observable"] = rep.fluctuation.observable;
    j["crossover_time"] = {{"reduced", rep.crossover_T},
                           {"si_s", to_si(rep.crossover_T, QuantityKind::time, si)}};
    j["mean_force"] = {{"reduced", rep.mean_force},
                       {"si_N", to_si(rep.mean_force, QuantityKind::force, si)}};
    j["abs_fluctuation"] = {{"lo", rep.abs_fluct_lo}, {"hi", rep.abs_fluct_hi}};
    j["caveat"] = std::string(rep.caveat);
    body << j.dump() << "\n";
  } else {
    body << "fluctuation feasibility report\n";
    body << "  d  = " << format_double(rep.fluctuation.d) << " (reduced) = "
         << format_double(to_si(rep.fluctuation.d, QuantityKind::length, si)) << " m\n";
    body << "  T  = " << format_double(rep.fluctuation.T) << " (reduced) = "
         << format_double(to_si(rep.fluctuation.T, QuantityKind::time, si)) << " s\n";
    body << "  x = d/(cT) = " << format_double(rep.fluctuation.x) << "\n";
    body << "  regime: " << regime_name(rep.fluctuation.regime) << "\n";
    if (rep.fluctuation.rf_lo == rep.fluctuation.rf_hi) {
      body << "  relative fluctuation: " << format_double(rep.fluctuation.rf_lo) << "\n";
    } else {
      body << "  relative fluctuation: [" << format_double(rep.fluctuation.rf_lo) << ", "
           << format_double(rep.fluctuation.rf_hi) << "]\n";
    }
    body << "  observable: " << (rep.fluctuation.observable ? "yes" : "not observable")
         << "\n";
    body << "  crossover time: " << format_double(rep.crossover_T) << " (reduced) = "
         << format_double(to_si(rep.crossover_T, QuantityKind::time, si)) << " s\n";
    body << "  mean force (far zone): " << format_double(rep.mean_force)
         << " (reduced) = "
         << format_double(to_si(rep.mean_force, QuantityKind::force, si)) << " N\n";
    body << "  absolute fluctuation: [" << format_double(rep.abs_fluct_lo) << ", "
         << format_double(rep.abs_fluct_hi) << "] (reduced)\n";
    body << "  caveat: " << rep.caveat << "\n";
  }
  if (opt.out.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream out(opt.out, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << opt.out << "\n";
      return 2;
    }
    out << body.str();
  }
  return 0;
}

// ---------------------------------------------------------------------------
// selftest: closed-form spot checks; runs in well under a second

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

Check check_rel(const std::string& name, double got, double want, double tol) {
  const double rel = std::fabs(got - want) / std::fabs(want);
  std::string detail = "got " + format_double(got) + ", want " + format_double(want) +
                       ", rel err " + format_double(rel);
  return {name, rel <= tol, std::move(detail)};
}

std::vector<Check> run_selftest_checks(const std::string& perturb) {
  std::vector<Check> checks;
  const double bump = 1.0 + 1e-6;
  const auto maybe_perturb = [&](const std::string& name, double v) {
    return name == perturb ? v * bump : v;
  };

  checks.push_back(check_rel("Si(1)", maybe_perturb("Si(1)", sin_integral(1.0)),
                             0.9460830703671830, 1e-9));
  checks.push_back(check_rel("Ci(1)", maybe_perturb("Ci(1)", cos_integral(1.0)),
                             0.3374039229009681, 1e-9));
  checks.push_back(
      check_rel("f(1)", maybe_perturb("f(1)", aux_f(1.0)), 0.6214496242358134, 1e-9));
  checks.push_back(
      check_rel("g(1)", maybe_perturb("g(1)", aux_g(1.0)), 0.3433779615564270, 1e-9));

  const AtomSpec unit_alpha = make_two_level_atom_from_alpha(1.0, 1.0);
  {
    const PairConfiguration cfg{1e-8, 1e-8, 1.0};
    const PotentialResult r = pair_potential_far(unit_alpha, unit_alpha, cfg);
    const double coef = maybe_perturb("on-plate coefficient", r.total);
    checks.push_back(
        check_rel("on-plate coefficient", coef, -13.0 / (2.0 * kPi), 1e-12));
  }
  {
    const PairConfiguration cfg{1000.0, 1000.0, 1.0};
    const PotentialResult r = pair_potential_far(unit_alpha, unit_alpha, cfg);
    const double ratio = maybe_perturb("free-space limit", r.total / r.term_free);
    checks.push_back(check_rel("free-space limit", ratio, 1.0, 1e-6));
  }
  {
    const AtomSpec atom = make_two_level_atom(1.5, 1.0);
    const double far = wall_force_ground(atom, 1e3).force / wall_force_far_ground(atom, 1e3);
    checks.push_back(
        check_rel("wall far-zone match", maybe_perturb("wall far-zone match", far), 1.0,
                  1e-3));
    const double d = 1e-3;
    const double near =
        wall_force_ground(atom, d).force * (4.0 * d * d * d * d / atom.mu_sq);
    checks.push_back(check_rel("wall near-zone match",
                               maybe_perturb("wall near-zone match", near), -1.0, 1e-2));
  }
  {
    const FluctuationReport lo = relative_fluctuation(0.1, 1.0);
    const FluctuationReport hi = relative_fluctuation(10.0, 1.0);
    checks.push_back(check_rel("fluctuation exponents",
                               maybe_perturb("fluctuation exponents",
                                             lo.rf_lo * 1e6 + hi.rf_lo * 1e-5),
                               2.0, 1e-12));
  }
  return checks;
}

int run_selftest(const std::string& perturb) {
  const std::vector<Check> checks = run_selftest_checks(perturb);
  std::size_t n_fail = 0;
  for (const Check& c : checks) {
    std::cout << (c.pass ? "PASS  " : "FAIL  ") << c.name << "  (" << c.detail << ")\n";
    if (!c.pass) ++n_fail;
  }
  if (n_fail != 0) {
    std::cout << n_fail << " of " << checks.size() << " selftest checks failed\n";
    return 1;
  }
  std::cout << "all " << checks.size() << " selftest checks passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir-Polder dispersion-force toolkit"};
  app.require_subcommand(1);

  ScanOptions pair_opt, wall_opt, energy_opt;
  ReportOptions report_opt;
  std::string perturb;

  CLI::App* pair = app.add_subcommand(
      "pair-scan", "sweep the two-atom potential/force near a conducting plate");
  add_scan_flags(pair, pair_opt);
  CLI::App* wall =
      app.add_subcommand("wall-scan", "sweep the atom-wall Casimir-Polder force");
  add_scan_flags(wall, wall_opt);
  CLI::App* energy =
      app.add_subcommand("energy-scan", "sweep the atom-wall interaction energy");
  add_scan_flags(energy, energy_opt);

  CLI::App* report = app.add_subcommand(
      "fluctuation-report", "force-fluctuation feasibility report for one (d, T) point");
  report->add_option("--fix", report_opt.fix, "set d, T, mu_sq or k0 (KEY=VAL, reduced units)")
      ->take_all();
  report->add_option("--format", report_opt.format, "output format: text (default) or json");
  report->add_option("--out", report_opt.out, "output path (default: standard output)");

  CLI::App* selftest =
      app.add_subcommand("selftest", "run the embedded acceptance spot checks");
  selftest->add_option("--perturb", perturb, "perturb a named check (test hook)")
      ->group("");  // hidden

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    SweepSpec pair_default;
    pair_default.quantity = SweepQuantity::pair_potential;
    pair_default.variable = "rho";
    pair_default.min = 1.0;
    pair_default.max = 10.0;
    pair_default.count = 19;
    pair_default.spacing = Spacing::linear;

    SweepSpec wall_default;  // wall_force_ground over d, log grid
    SweepSpec energy_default;
    energy_default.quantity = SweepQuantity::wall_energy;

    if (pair->parsed()) return run_scan(pair, pair_opt, pair_default);
    if (wall->parsed()) return run_scan(wall, wall_opt, wall_default);
    if (energy->parsed()) return run_scan(energy, energy_opt, energy_default);
    if (report->parsed()) return run_fluctuation_report(report_opt);
    if (selftest->parsed()) return run_selftest(perturb);
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
