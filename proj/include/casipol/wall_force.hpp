// wall_force.hpp - Casimir-Polder force between a two-level atom and a
// perfectly conducting wall, for ground- and excited-state atoms, valid at
// every distance. Also the far-zone closed form, the interaction energy by
// quadrature, and zero-crossing analysis of the oscillating excited-state
// force.
//
// Negative force = attraction toward the wall. The two-level model is used
// as is; no multilevel corrections are applied.

#pragma once

#include <vector>

#include "casipol/units.hpp"

namespace casipol {

enum class AtomicState { ground, excited };

// Reporting convenience only; the force formulas are exact at every z.
enum class DistanceRegime { near, intermediate, far };

struct WallForceResult {
  double force;
  double d;               // atom-wall distance
  double z;               // 2 k0 d
  DistanceRegime regime;  // near: z < 0.1, far: z > 10
};

// Ground-state force; attractive at every distance.
WallForceResult wall_force_ground(const AtomSpec& atom, double d);

// Excited-state force; oscillates in sign with spatial period pi/k0.
WallForceResult wall_force_excited(const AtomSpec& atom, double d);

// Far-zone ground-state closed form -3 alpha0 / (2 pi d^5).
double wall_force_far_ground(const AtomSpec& atom, double d);

// Interaction energy U(d) = int_d^inf F(s) ds (so that F = -dU/dd), by
// adaptive quadrature up to a cutoff plus the closed-form tail. Throws a
// numeric error naming the achieved tolerance when the quadrature does not
// converge within its evaluation budget.
double wall_energy(const AtomSpec& atom, double d, AtomicState state,
                   std::size_t quad_max_evals = 2'000'000);

// Closed-form antiderivative of the force laws; used as the quadrature tail
// and as the second route in the energy consistency tests.
double wall_energy_closed_form(const AtomSpec& atom, double d, AtomicState state);

struct ZeroCrossing {
  double d_zero;
  double lo, hi;  // enclosing bracket after refinement
  bool refined;
};

// Sign changes of the excited-state force on [d_min, d_max]: bracketed on a
// grid with pitch <= pi/(32 k0), then bisection-refined to relative width
// 1e-10. Throws std::runtime_error when the required grid would exceed the
// internal point budget.
std::vector<ZeroCrossing> zero_crossings_excited(const AtomSpec& atom, double d_min,
                                                 double d_max);

}  // namespace casipol
