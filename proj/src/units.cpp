#include "casipol/units.hpp"

#include <stdexcept>

namespace casipol {

namespace {

double unit_factor(QuantityKind kind, const UnitSystem& units) {
  switch (kind) {
    case QuantityKind::length:
      return units.length_unit_si();
    case QuantityKind::energy:
      return units.energy_unit_si();
    case QuantityKind::force:
      return units.force_unit_si();
    case QuantityKind::time:
      return units.time_unit_si();
    case QuantityKind::dimensionless:
      return 1.0;
  }
  throw std::domain_error("to_si/from_si: unknown quantity kind");
}

}  // namespace

double to_si(double reduced, QuantityKind kind, const UnitSystem& units) {
  return reduced * unit_factor(kind, units);
}

double from_si(double si, QuantityKind kind, const UnitSystem& units) {
  return si / unit_factor(kind, units);
}

AtomSpec make_two_level_atom(double mu_sq, double k0, std::string label) {
  if (!(mu_sq > 0.0)) throw std::domain_error("make_two_level_atom: mu_sq must be > 0");
  if (!(k0 > 0.0)) throw std::domain_error("make_two_level_atom: k0 must be > 0");
  return AtomSpec{2.0 * mu_sq / (3.0 * k0), k0, mu_sq, std::move(label)};
}

AtomSpec make_two_level_atom_from_alpha(double alpha0, double k0, std::string label) {
  if (!(alpha0 > 0.0))
    throw std::domain_error("make_two_level_atom_from_alpha: alpha0 must be > 0");
  if (!(k0 > 0.0)) throw std::domain_error("make_two_level_atom_from_alpha: k0 must be > 0");
  return AtomSpec{alpha0, k0, 1.5 * k0 * alpha0, std::move(label)};
}

AtomSpec make_atom_with_alpha_override(double alpha0, double mu_sq, double k0,
                                       std::string label) {
  if (!(alpha0 > 0.0))
    throw std::domain_error("make_atom_with_alpha_override: alpha0 must be > 0");
  if (!(mu_sq > 0.0))
    throw std::domain_error("make_atom_with_alpha_override: mu_sq must be > 0");
  if (!(k0 > 0.0)) throw std::domain_error("make_atom_with_alpha_override: k0 must be > 0");
  label += label.empty() ? "[alpha-override]" : " [alpha-override]";
  return AtomSpec{alpha0, k0, mu_sq, std::move(label)};
}

}  // namespace casipol
