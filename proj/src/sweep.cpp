#include "casipol/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <set>

#include <json.hpp>

#include "casipol/batch.hpp"
#include "casipol/fluctuations.hpp"
#include "casipol/pair_potential.hpp"

namespace casipol {

using nlohmann::json;

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, ptr);
}

double col_unit_si_factor(ColUnit u, const UnitSystem& units) {
  const double L = units.length_unit_si();
  switch (u) {
    case ColUnit::dimensionless:
      return 1.0;
    case ColUnit::length:
      return L;
    case ColUnit::inv_length:
      return 1.0 / L;
    case ColUnit::volume:
      return L * L * L;
    case ColUnit::energy:
      return units.energy_unit_si();
    case ColUnit::energy_volume:
      return units.energy_unit_si() * L * L * L;
    case ColUnit::force:
      return units.force_unit_si();
    case ColUnit::time:
      return units.time_unit_si();
  }
  return 1.0;
}

std::string quantity_name(SweepQuantity q) {
  switch (q) {
    case SweepQuantity::pair_potential:
      return "pair_potential";
    case SweepQuantity::pair_force:
      return "pair_force";
    case SweepQuantity::wall_force_ground:
      return "wall_force_ground";
    case SweepQuantity::wall_force_excited:
      return "wall_force_excited";
    case SweepQuantity::wall_energy:
      return "wall_energy";
    case SweepQuantity::fluctuation:
      return "fluctuation";
  }
  return "?";
}

SweepQuantity quantity_from_name(const std::string& name) {
  for (SweepQuantity q :
       {SweepQuantity::pair_potential, SweepQuantity::pair_force,
        SweepQuantity::wall_force_ground, SweepQuantity::wall_force_excited,
        SweepQuantity::wall_energy, SweepQuantity::fluctuation}) {
    if (quantity_name(q) == name) return q;
  }
  throw SpecError("unknown quantity: " + name);
}

namespace {

struct ParamInfo {
  const char* name;
  ColUnit unit;
  double default_value;
  bool optional;  // no default; absent means "derive" (force direction)
};

// parameter tables per quantity; the sweep variable must be one of these
const std::vector<ParamInfo>& params_for(SweepQuantity q) {
  static const std::vector<ParamInfo> pair_potential{
      {"alpha_a", ColUnit::volume, 1.0, false}, {"alpha_b", ColUnit::volume, 1.0, false},
      {"k0_a", ColUnit::inv_length, 1.0, false}, {"k0_b", ColUnit::inv_length, 1.0, false},
      {"z_a", ColUnit::length, 1.0, false},      {"z_b", ColUnit::length, 1.0, false},
      {"rho", ColUnit::length, 1.0, false},
  };
  static const std::vector<ParamInfo> pair_force{
      {"alpha_a", ColUnit::volume, 1.0, false}, {"alpha_b", ColUnit::volume, 1.0, false},
      {"k0_a", ColUnit::inv_length, 1.0, false}, {"k0_b", ColUnit::inv_length, 1.0, false},
      {"z_a", ColUnit::length, 1.0, false},      {"z_b", ColUnit::length, 1.0, false},
      {"rho", ColUnit::length, 1.0, false},
      {"dir_x", ColUnit::dimensionless, 0.0, true},
      {"dir_y", ColUnit::dimensionless, 0.0, true},
      {"dir_z", ColUnit::dimensionless, 0.0, true},
  };
  static const std::vector<ParamInfo> wall{
      {"mu_sq", ColUnit::energy_volume, 1.5, false},
      {"k0", ColUnit::inv_length, 1.0, false},
      {"d", ColUnit::length, 1.0, false},
  };
  static const std::vector<ParamInfo> fluct{
      {"d", ColUnit::length, 1.0, false},
      {"T", ColUnit::time, 1.0, false},
  };
  switch (q) {
    case SweepQuantity::pair_potential:
      return pair_potential;
    case SweepQuantity::pair_force:
      return pair_force;
    case SweepQuantity::wall_force_ground:
    case SweepQuantity::wall_force_excited:
    case SweepQuantity::wall_energy:
      return wall;
    case SweepQuantity::fluctuation:
      return fluct;
  }
  return wall;
}

const ParamInfo* find_param(SweepQuantity q, const std::string& name) {
  for (const ParamInfo& p : params_for(q))
    if (name == p.name) return &p;
  return nullptr;
}

std::string spacing_name(Spacing s) { return s == Spacing::log ? "log" : "linear"; }
std::string format_name(OutputFormat f) { return f == OutputFormat::json ? "json" : "csv"; }
std::string units_name(UnitsMode u) { return u == UnitsMode::si ? "si" : "reduced"; }
std::string state_name(AtomicState s) {
  return s == AtomicState::excited ? "excited" : "ground";
}

SweepSpec resolve(const SweepSpec& in) {
  SweepSpec spec = in;
  if (spec.count < 2) throw SpecError("count must be >= 2");
  if (!(spec.min < spec.max)) throw SpecError("min must be < max");
  if (spec.spacing == Spacing::log && !(spec.min > 0.0))
    throw SpecError("log spacing requires min > 0");
  const ParamInfo* var = find_param(spec.quantity, spec.variable);
  if (var == nullptr)
    throw SpecError("variable '" + spec.variable + "' is not a parameter of " +
                    quantity_name(spec.quantity));
  if (spec.fixed.count(spec.variable))
    throw SpecError("variable '" + spec.variable + "' must not also be fixed");
  for (const auto& [key, value] : spec.fixed) {
    (void)value;
    if (find_param(spec.quantity, key) == nullptr)
      throw SpecError("unknown fixed parameter '" + key + "' for " +
                      quantity_name(spec.quantity));
  }
  // merge defaults so the echoed spec is fully resolved
  for (const ParamInfo& p : params_for(spec.quantity)) {
    if (p.name == spec.variable || p.optional) continue;
    spec.fixed.emplace(p.name, p.default_value);
  }
  return spec;
}

double grid_point(const SweepSpec& spec, int i) {
  if (i == 0) return spec.min;
  if (i == spec.count - 1) return spec.max;
  const double t = double(i) / double(spec.count - 1);
  if (spec.spacing == Spacing::log)
    return std::exp(std::log(spec.min) + t * (std::log(spec.max) - std::log(spec.min)));
  return spec.min + t * (spec.max - spec.min);
}

struct Evaluator {
  std::vector<SweepColumn> value_columns;
  std::vector<std::string> text_columns;
  // fills row.values/texts/flags for parameter map `p`
  void (*eval)(const std::map<std::string, double>& p, SweepRow& row, AtomicState state);
};

double at(const std::map<std::string, double>& p, const char* key) {
  return p.at(key);
}

void eval_pair_potential(const std::map<std::string, double>& p, SweepRow& row,
                         AtomicState) {
  const AtomSpec a = make_two_level_atom_from_alpha(at(p, "alpha_a"), at(p, "k0_a"));
  const AtomSpec b = make_two_level_atom_from_alpha(at(p, "alpha_b"), at(p, "k0_b"));
  const PairConfiguration cfg{at(p, "z_a"), at(p, "z_b"), at(p, "rho")};
  const PotentialResult r = pair_potential_far(a, b, cfg);
  row.values = {r.total, r.term_free, r.term_image, r.term_cross};
  if (!r.within_far_zone) row.flags.push_back("outside_far_zone");
}

void eval_pair_force(const std::map<std::string, double>& p, SweepRow& row, AtomicState) {
  const AtomSpec a = make_two_level_atom_from_alpha(at(p, "alpha_a"), at(p, "k0_a"));
  const AtomSpec b = make_two_level_atom_from_alpha(at(p, "alpha_b"), at(p, "k0_b"));
  const PairConfiguration cfg{at(p, "z_a"), at(p, "z_b"), at(p, "rho")};
  std::array<double, 3> dir;
  if (p.count("dir_x") || p.count("dir_y") || p.count("dir_z")) {
    dir = {p.count("dir_x") ? p.at("dir_x") : 0.0, p.count("dir_y") ? p.at("dir_y") : 0.0,
           p.count("dir_z") ? p.at("dir_z") : 0.0};
  } else {
    const GeometryFrame geo = geometry_frame(cfg);
    dir = {cfg.rho / geo.R, 0.0, (cfg.z_b - cfg.z_a) / geo.R};
  }
  const PairForce f = pair_force(a, b, cfg, dir);
  row.values = {f.value, f.error};
}

const char* regime_label(double z) {
  if (z < 0.1) return "near";
  if (z > 10.0) return "far";
  return "intermediate";
}

void eval_wall_common(const std::map<std::string, double>& p, SweepRow& row,
                      AtomicState state, bool excited_quantity) {
  const AtomSpec atom = make_two_level_atom(at(p, "mu_sq"), at(p, "k0"));
  (void)state;
  const WallForceResult r = excited_quantity ? wall_force_excited(atom, at(p, "d"))
                                             : wall_force_ground(atom, at(p, "d"));
  row.values = {r.force, r.z};
  switch (r.regime) {
    case DistanceRegime::near:
      row.texts = {"near"};
      break;
    case DistanceRegime::far:
      row.texts = {"far"};
      break;
    default:
      row.texts = {"intermediate"};
  }
}

void eval_wall_ground(const std::map<std::string, double>& p, SweepRow& row,
                      AtomicState state) {
  eval_wall_common(p, row, state, false);
}

void eval_wall_excited(const std::map<std::string, double>& p, SweepRow& row,
                       AtomicState state) {
  eval_wall_common(p, row, state, true);
}

void eval_wall_energy(const std::map<std::string, double>& p, SweepRow& row,
                      AtomicState state) {
  const AtomSpec atom = make_two_level_atom(at(p, "mu_sq"), at(p, "k0"));
  row.values = {wall_energy(atom, at(p, "d"), state)};
}

void eval_fluctuation(const std::map<std::string, double>& p, SweepRow& row, AtomicState) {
  const FluctuationReport r = relative_fluctuation(at(p, "d"), at(p, "T"));
  row.values = {r.x, r.rf_lo, r.rf_hi};
  row.texts = {std::string(regime_name(r.regime)), r.observable ? "true" : "false"};
  row.flags.push_back("unit_prefactor_scaling");
}

Evaluator evaluator_for(SweepQuantity q) {
  switch (q) {
    case SweepQuantity::pair_potential:
      return {{{"total", ColUnit::energy},
               {"term_free", ColUnit::energy},
               {"term_image", ColUnit::energy},
               {"term_cross", ColUnit::energy}},
              {},
              eval_pair_potential};
    case SweepQuantity::pair_force:
      return {{{"force", ColUnit::force}, {"error", ColUnit::force}}, {}, eval_pair_force};
    case SweepQuantity::wall_force_ground:
      return {{{"force", ColUnit::force}, {"z", ColUnit::dimensionless}},
              {"regime"},
              eval_wall_ground};
    case SweepQuantity::wall_force_excited:
      return {{{"force", ColUnit::force}, {"z", ColUnit::dimensionless}},
              {"regime"},
              eval_wall_excited};
    case SweepQuantity::wall_energy:
      return {{{"energy", ColUnit::energy}}, {}, eval_wall_energy};
    case SweepQuantity::fluctuation:
      return {{{"x", ColUnit::dimensionless},
               {"rf_lo", ColUnit::dimensionless},
               {"rf_hi", ColUnit::dimensionless}},
              {"regime", "observable"},
              eval_fluctuation};
  }
  throw SpecError("unhandled quantity");
}

}  // namespace

SweepResult run_sweep(const SweepSpec& raw) {
  const SweepSpec spec = resolve(raw);
  const Evaluator ev = evaluator_for(spec.quantity);
  SweepResult result;
  result.spec = spec;
  result.var_unit = find_param(spec.quantity, spec.variable)->unit;
  result.value_columns = ev.value_columns;
  result.text_columns = ev.text_columns;
  result.rows.reserve(std::size_t(spec.count));

  // wall-force distance sweeps run through the batch kernels (the
  // backend-dispatched SIMD path); everything else evaluates per point
  const bool batched = (spec.quantity == SweepQuantity::wall_force_ground ||
                        spec.quantity == SweepQuantity::wall_force_excited) &&
                       spec.variable == "d";
  std::vector<double> batch_force;
  std::vector<double> grid(std::size_t(spec.count));
  for (int i = 0; i < spec.count; ++i) grid[std::size_t(i)] = grid_point(spec, i);
  if (batched) {
    batch_force.resize(grid.size());
    const double mu_sq = spec.fixed.at("mu_sq");
    const double k0 = spec.fixed.at("k0");
    if (spec.quantity == SweepQuantity::wall_force_ground)
      batch::wall_force_ground(mu_sq, k0, grid, batch_force);
    else
      batch::wall_force_excited(mu_sq, k0, grid, batch_force);
  }

  for (int i = 0; i < spec.count; ++i) {
    SweepRow row;
    row.index = i;
    row.x = grid[std::size_t(i)];
    row.ok = true;
    std::map<std::string, double> params = spec.fixed;
    params[spec.variable] = row.x;
    try {
      if (batched) {
        const double k0 = spec.fixed.at("k0");
        const double z = 2.0 * k0 * row.x;
        if (!(row.x > 0.0)) throw std::domain_error("wall force: d must be > 0");
        row.values = {batch_force[std::size_t(i)], z};
        row.texts = {regime_label(z)};
      } else {
        ev.eval(params, row, spec.state);
      }
    } catch (const std::exception& e) {
      row.ok = false;
      row.values.assign(ev.value_columns.size(), std::nan(""));
      row.texts.assign(ev.text_columns.size(), "");
      std::string msg = e.what();
      std::replace(msg.begin(), msg.end(), ',', ';');
      row.flags.push_back("error=" + msg);
      ++result.failures;
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

namespace {

json spec_to_json_obj(const SweepSpec& spec) {
  json j;
  j["quantity"] = quantity_name(spec.quantity);
  j["var"] = spec.variable;
  j["min"] = spec.min;
  j["max"] = spec.max;
  j["count"] = spec.count;
  j["spacing"] = spacing_name(spec.spacing);
  json fixed = json::object();
  for (const auto& [key, value] : spec.fixed) fixed[key] = value;
  j["fixed"] = fixed;
  j["state"] = state_name(spec.state);
  j["format"] = format_name(spec.format);
  j["units"] = units_name(spec.units);
  return j;
}

double emitted(double reduced, ColUnit unit, UnitsMode mode) {
  return mode == UnitsMode::si ? reduced * col_unit_si_factor(unit) : reduced;
}

std::string join_flags(const std::vector<std::string>& flags) {
  std::string out;
  for (const std::string& f : flags) {
    if (!out.empty()) out += ';';
    out += f;
  }
  return out;
}

}  // namespace

std::string spec_to_canonical_json(const SweepSpec& spec) {
  return spec_to_json_obj(spec).dump();
}

SweepSpec spec_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw SpecError(std::string("config is not valid JSON: ") + e.what());
  }
  if (j.contains("spec") && j["spec"].is_object()) j = j["spec"];
  static const std::set<std::string> known{"quantity", "var",   "min",   "max",  "count",
                                           "spacing",  "fixed", "state", "format", "units"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!known.count(key)) throw SpecError("unknown config key: " + key);
  }
  SweepSpec spec;
  try {
    if (j.contains("quantity")) spec.quantity = quantity_from_name(j["quantity"]);
    if (j.contains("var")) spec.variable = j["var"].get<std::string>();
    if (j.contains("min")) spec.min = j["min"].get<double>();
    if (j.contains("max")) spec.max = j["max"].get<double>();
    if (j.contains("count")) spec.count = j["count"].get<int>();
    if (j.contains("spacing")) {
      const std::string s = j["spacing"];
      if (s == "log")
        spec.spacing = Spacing::log;
      else if (s == "linear")
        spec.spacing = Spacing::linear;
      else
        throw SpecError("unknown spacing: " + s);
    }
    if (j.contains("fixed"))
      for (const auto& [key, value] : j["fixed"].items())
        spec.fixed[key] = value.get<double>();
    if (j.contains("state")) {
      const std::string s = j["state"];
      if (s == "excited")
        spec.state = AtomicState::excited;
      else if (s == "ground")
        spec.state = AtomicState::ground;
      else
        throw SpecError("unknown state: " + s);
    }
    if (j.contains("format")) {
      const std::string s = j["format"];
      if (s == "json")
        spec.format = OutputFormat::json;
      else if (s == "csv")
        spec.format = OutputFormat::csv;
      else
        throw SpecError("unknown format: " + s);
    }
    if (j.contains("units")) {
      const std::string s = j["units"];
      if (s == "si")
        spec.units = UnitsMode::si;
      else if (s == "reduced")
        spec.units = UnitsMode::reduced;
      else
        throw SpecError("unknown units: " + s);
    }
  } catch (const json::exception& e) {
    throw SpecError(std::string("bad config value: ") + e.what());
  }
  return spec;
}

void write_csv(const SweepResult& result, std::ostream& os) {
  os << "# spec: " << spec_to_canonical_json(result.spec) << "\n";
  os << "index," << result.spec.variable;
  for (const SweepColumn& c : result.value_columns) os << ',' << c.name;
  for (const std::string& t : result.text_columns) os << ',' << t;
  os << ",flags\n";
  for (const SweepRow& row : result.rows) {
    os << row.index << ',' << format_double(emitted(row.x, result.var_unit, result.spec.units));
    for (std::size_t c = 0; c < result.value_columns.size(); ++c)
      os << ','
         << format_double(
                emitted(row.values[c], result.value_columns[c].unit, result.spec.units));
    for (const std::string& t : row.texts) os << ',' << t;
    os << ',' << join_flags(row.flags) << "\n";
  }
}

void write_json(const SweepResult& result, std::ostream& os) {
  json envelope;
  envelope["schema_version"] = "1";
  envelope["spec"] = spec_to_json_obj(result.spec);
  json rows = json::array();
  for (const SweepRow& row : result.rows) {
    json r;
    r["index"] = row.index;
    r[result.spec.variable] = emitted(row.x, result.var_unit, result.spec.units);
    for (std::size_t c = 0; c < result.value_columns.size(); ++c) {
      r[result.value_columns[c].name] =
          emitted(row.values[c], result.value_columns[c].unit, result.spec.units);
    }
    for (std::size_t t = 0; t < result.text_columns.size(); ++t)
      r[result.text_columns[t]] = row.texts[t];
    r["flags"] = row.flags;
    rows.push_back(std::move(r));
  }
  envelope["rows"] = std::move(rows);
  os << envelope.dump() << "\n";
}

}  // namespace casipol
