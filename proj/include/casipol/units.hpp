// units.hpp - reduced-unit system (hbar = c = 1) and two-level atom data.
//
// All internal formulas work in reduced units: lengths in multiples of a
// user-selected base length (default 1 micrometre), energies in hbar*c/L,
// forces in hbar*c/L^2, times in L/c. Conversion to SI happens only at the
// I/O boundary.

#pragma once

#include <string>

namespace casipol {

inline constexpr double kHbarSI = 1.054571817e-34;  // J s
inline constexpr double kSpeedOfLightSI = 299792458.0;  // m/s

enum class QuantityKind { length, energy, force, time, dimensionless };

struct UnitSystem {
  double base_length_m = 1e-6;  // micrometre

  double length_unit_si() const { return base_length_m; }
  double energy_unit_si() const { return kHbarSI * kSpeedOfLightSI / base_length_m; }
  double force_unit_si() const {
    return kHbarSI * kSpeedOfLightSI / (base_length_m * base_length_m);
  }
  double time_unit_si() const { return base_length_m / kSpeedOfLightSI; }
};

// Multiplies a reduced quantity by the SI value of its unit.
double to_si(double reduced, QuantityKind kind, const UnitSystem& units = {});
// Inverse of to_si.
double from_si(double si, QuantityKind kind, const UnitSystem& units = {});

// Isotropic two-level atom. alpha0 is the static polarizability (length^3),
// k0 the transition wavenumber (1/length), mu_sq the squared transition
// dipole moment (energy * length^3 in reduced units).
struct AtomSpec {
  double alpha0;
  double k0;
  double mu_sq;
  std::string label;
};

// Builds a consistent two-level atom: alpha0 = 2 mu_sq / (3 k0).
AtomSpec make_two_level_atom(double mu_sq, double k0, std::string label = "");

// Same, but starting from the polarizability: mu_sq = 3 k0 alpha0 / 2.
AtomSpec make_two_level_atom_from_alpha(double alpha0, double k0, std::string label = "");

// Escape hatch for an alpha0 that is deliberately inconsistent with
// (mu_sq, k0); the label is tagged so downstream reports show it.
AtomSpec make_atom_with_alpha_override(double alpha0, double mu_sq, double k0,
                                       std::string label = "");

}  // namespace casipol
