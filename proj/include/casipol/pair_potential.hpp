// pair_potential.hpp - two ground-state atoms in front of a perfectly
// conducting plate: image geometry, the far-zone Casimir-Polder pair
// potential, the oscillating-dipole interaction tensor, and interatomic
// forces by differentiation.
//
// Geometry convention: the plate is the plane height = 0, its normal is the
// third Cartesian axis, atom A sits at (0, 0, z_a), atom B at (rho, 0, z_b).

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "casipol/units.hpp"

namespace casipol {

struct PairConfiguration {
  double z_a;  // height of atom A above the plate, > 0
  double z_b;  // height of atom B, > 0
  double rho;  // lateral separation, >= 0
};

struct GeometryFrame {
  double R;               // |r_B - r_A|
  double R_bar;           // distance from A to the image of B
  double sin2_theta;      // sin^2 of the angle between R and the plate normal
  double sin2_theta_bar;  // same for R_bar
};

// Exact image geometry; throws std::domain_error for coincident atoms or
// non-positive heights.
GeometryFrame geometry_frame(const PairConfiguration& config);

struct PotentialResult {
  double total;       // = term_free + term_image + term_cross (same FP order)
  double term_free;   // -(23/4pi) aA aB / R^7        (always < 0)
  double term_image;  // -(23/4pi) aA aB / R_bar^7    (always < 0)
  double term_cross;  // mixed R, R_bar term          (always >= 0)
  // False when k0*R < 10 for either atom: the closed form is a far-zone
  // result and the evaluation point is outside its stated validity. The
  // value is still computed.
  bool within_far_zone;
};

PotentialResult pair_potential_far(const AtomSpec& atom_a, const AtomSpec& atom_b,
                                   const PairConfiguration& config);

using Mat3 = std::array<std::array<double, 3>, 3>;

struct DipoleTensor {
  Mat3 total;       // free_part - image_part
  Mat3 free_part;   // oscillating-dipole tensor of the direct path
  Mat3 image_part;  // reflection matrix applied to the image-path tensor
};

// Interaction tensor between oscillating dipoles at wavenumber k >= 0, with
// the conducting-plate image contribution. All derivatives are analytic.
DipoleTensor dipole_tensor(double k, const PairConfiguration& config);

struct PairForce {
  double value;  // force component on atom B along `direction`
  double error;  // finite-difference error estimate
};

// Minus the directional derivative of the pair potential with respect to
// atom B's position, by central differences with Richardson refinement.
// `direction` need not be normalized; it is normalized internally.
PairForce pair_force(const AtomSpec& atom_a, const AtomSpec& atom_b,
                     const PairConfiguration& config, const std::array<double, 3>& direction);

struct AttractivityPoint {
  PairConfiguration config;
  PairForce along_ab;  // component along the A->B direction (moving B away from A)
  PairForce lateral;   // component along increasing rho
  bool violation;      // along_ab not provably negative
  std::string note;    // non-empty when the evaluation failed numerically
};

struct AttractivityReport {
  std::vector<AttractivityPoint> points;
  std::size_t violations = 0;
  std::size_t numeric_failures = 0;
};

// Evaluates the A->B force component over a configuration grid and reports
// every point where it is not negative beyond its error bar.
AttractivityReport attractivity_scan(const AtomSpec& atom_a, const AtomSpec& atom_b,
                                     std::span<const PairConfiguration> grid);

// Deterministic quasi-random configuration grid (2D Halton x uniform z_b
// blend) covering z in [z_lo, z_hi], rho in [0, rho_hi].
std::vector<PairConfiguration> quasi_random_configurations(std::size_t count, double z_lo,
                                                           double z_hi, double rho_hi);

}  // namespace casipol
