// sweep.hpp - parameter-sweep engine behind the CLI: resolves a sweep
// specification against built-in defaults, evaluates the chosen quantity on
// the grid, and emits deterministic CSV or JSON with the resolved spec
// echoed into the output for reproducibility.
//
// All spec values are in reduced units (base length = 1 micrometre,
// times in units of base_length/c). The units field only selects the unit
// system of the emitted columns.

#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "casipol/units.hpp"
#include "casipol/wall_force.hpp"

namespace casipol {

enum class SweepQuantity {
  pair_potential,
  pair_force,
  wall_force_ground,
  wall_force_excited,
  wall_energy,
  fluctuation,
};

enum class Spacing { linear, log };
enum class OutputFormat { csv, json };
enum class UnitsMode { reduced, si };

struct SpecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SweepSpec {
  SweepQuantity quantity = SweepQuantity::wall_force_ground;
  std::string variable = "d";
  double min = 0.1;
  double max = 10.0;
  int count = 25;
  Spacing spacing = Spacing::log;
  std::map<std::string, double> fixed;  // user-supplied overrides
  AtomicState state = AtomicState::ground;
  OutputFormat format = OutputFormat::csv;
  UnitsMode units = UnitsMode::reduced;
};

// Column unit tags; to_si covers the spec'd four kinds, sweeps also need the
// atom-parameter dimensions.
enum class ColUnit {
  dimensionless,
  length,
  inv_length,
  volume,         // polarizability, length^3
  energy,
  energy_volume,  // squared dipole moment, energy * length^3
  force,
  time,
};

double col_unit_si_factor(ColUnit u, const UnitSystem& units = {});

struct SweepColumn {
  std::string name;
  ColUnit unit;
};

struct SweepRow {
  int index;
  double x;  // swept value (reduced units)
  std::vector<double> values;
  std::vector<std::string> texts;
  std::vector<std::string> flags;
  bool ok;
};

struct SweepResult {
  SweepSpec spec;  // fully resolved (defaults merged into fixed)
  ColUnit var_unit;
  std::vector<SweepColumn> value_columns;
  std::vector<std::string> text_columns;
  std::vector<SweepRow> rows;
  std::size_t failures = 0;
};

// Validates, resolves defaults, evaluates. Throws SpecError on an invalid
// spec; numeric failures at individual grid points flag the row instead.
SweepResult run_sweep(const SweepSpec& spec);

void write_csv(const SweepResult& result, std::ostream& os);
void write_json(const SweepResult& result, std::ostream& os);

// Canonical (key-sorted, compact) JSON of a resolved spec.
std::string spec_to_canonical_json(const SweepSpec& spec);
// Accepts a bare spec object or a full output envelope ({"spec": ...}).
SweepSpec spec_from_json(const std::string& text);

std::string quantity_name(SweepQuantity q);
SweepQuantity quantity_from_name(const std::string& name);

// Shortest decimal representation that round-trips (<= 17 significant digits).
std::string format_double(double x);

}  // namespace casipol
