#include "casipol/wall_force.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "casipol/numerics.hpp"
#include "casipol/special_functions.hpp"
#include "kernels/pack_scalar.hpp"
#include "kernels/aux_kernels.hpp"

namespace casipol {

namespace {

constexpr double kPi = batch::kPi;

DistanceRegime regime_of(double z) {
  if (z < 0.1) return DistanceRegime::near;
  if (z > 10.0) return DistanceRegime::far;
  return DistanceRegime::intermediate;
}

double force_value(const AtomSpec& atom, double d, AtomicState state) {
  using batch::PackScalar;
  double out;
  if (state == AtomicState::ground) {
    batch::wall_force_driver<PackScalar, PackScalar, batch::WallState::ground>(
        atom.mu_sq, atom.k0, &d, &out, 1);
  } else {
    batch::wall_force_driver<PackScalar, PackScalar, batch::WallState::excited>(
        atom.mu_sq, atom.k0, &d, &out, 1);
  }
  return out;
}

void require_positive_distance(double d, const char* who) {
  if (!(d > 0.0)) throw std::domain_error(std::string(who) + ": d must be > 0");
}

}  // namespace

WallForceResult wall_force_ground(const AtomSpec& atom, double d) {
  require_positive_distance(d, "wall_force_ground");
  const double z = 2.0 * atom.k0 * d;
  return {force_value(atom, d, AtomicState::ground), d, z, regime_of(z)};
}

WallForceResult wall_force_excited(const AtomSpec& atom, double d) {
  require_positive_distance(d, "wall_force_excited");
  const double z = 2.0 * atom.k0 * d;
  return {force_value(atom, d, AtomicState::excited), d, z, regime_of(z)};
}

double wall_force_far_ground(const AtomSpec& atom, double d) {
  require_positive_distance(d, "wall_force_far_ground");
  const double d2 = d * d;
  return -3.0 * atom.alpha0 / (2.0 * kPi * d2 * d2 * d);
}

// With z = 2 k0 d the force laws integrate in closed form:
//   int F_g ds = -mu^2 (2k0)^3/(12 pi) * int B_g(z)/z^4 dz,
// and using f' = -g, g' = f - 1/z,
//   int B_g(z)/z^4 dz = A(z) = (1/z - 2/z^3) f - (2/z^2) g - 1/z^2,
//   int [B_e - B_g]/z^4 dz = pi C(z),
//   C(z) = (2/z^3 - 1/z) cos z + (2/z^2) sin z,
// both vanishing at infinity, so
//   U_g(d) = +mu^2 (2k0)^3/(12 pi) A(2 k0 d)
//   U_e(d) = -mu^2 (2k0)^3/(12 pi) [A(2 k0 d) + pi C(2 k0 d)].
double wall_energy_closed_form(const AtomSpec& atom, double d, AtomicState state) {
  require_positive_distance(d, "wall_energy_closed_form");
  const double z = 2.0 * atom.k0 * d;
  const AuxPair fg = aux_pair(z);
  const double inv = 1.0 / z;
  const double inv2 = inv * inv;
  const double inv3 = inv2 * inv;
  const double a_val = (inv - 2.0 * inv3) * fg.f - 2.0 * inv2 * fg.g - inv2;
  const double k2 = 2.0 * atom.k0;
  const double pref = atom.mu_sq * k2 * k2 * k2 / (12.0 * kPi);
  if (state == AtomicState::ground) return pref * a_val;
  const double c_val = (2.0 * inv3 - inv) * std::cos(z) + 2.0 * inv2 * std::sin(z);
  return -pref * (a_val + kPi * c_val);
}

double wall_energy(const AtomSpec& atom, double d, AtomicState state,
                   std::size_t quad_max_evals) {
  require_positive_distance(d, "wall_energy");
  // Cutoff for the quadrature leg; beyond it the closed-form tail is exact.
  // The ground-state integrand is monotone, so the generous spec cutoff is
  // cheap; the excited integrand oscillates with period pi/k0, so its cutoff
  // is kept short to bound the number of oscillations crossed.
  const double d_tail = (state == AtomicState::ground)
                            ? std::max(1e3 / atom.k0, 1e3 * d)
                            : std::max(20.0 / atom.k0, 2.0 * d);
  const auto integrand = [&](double t) {
    const double s = std::exp(t);
    return force_value(atom, s, state) * s;
  };
  // the bracket of the ground-state force cancels to 24/z at large z, which
  // leaves ~1e-12 relative evaluation noise in the integrand; the tolerance
  // sits above that floor
  const num::Quadrature q = num::integrate_adaptive(integrand, std::log(d),
                                                    std::log(d_tail), 1e-11, 0.0,
                                                    quad_max_evals);
  if (!q.converged) {
    std::ostringstream msg;
    msg << "wall_energy: quadrature did not converge; achieved tolerance " << q.error
        << " after " << q.evaluations << " evaluations";
    throw std::runtime_error(msg.str());
  }
  return q.value + wall_energy_closed_form(atom, d_tail, state);
}

std::vector<ZeroCrossing> zero_crossings_excited(const AtomSpec& atom, double d_min,
                                                 double d_max) {
  if (!(d_min > 0.0) || !(d_max > d_min))
    throw std::domain_error("zero_crossings_excited: need 0 < d_min < d_max");
  const double pitch = kPi / (64.0 * atom.k0);
  const double n_req = std::ceil((d_max - d_min) / pitch) + 1.0;
  constexpr double kMaxPoints = 2e7;
  if (n_req > kMaxPoints)
    throw std::runtime_error(
        "zero_crossings_excited: grid pitch pi/(32 k0) needs " + std::to_string(n_req) +
        " points, over the internal budget; split the range");
  const std::size_t n_points = std::max<std::size_t>(std::size_t(n_req), 2);
  const auto force = [&](double d) { return force_value(atom, d, AtomicState::excited); };
  auto brackets = num::bracket_sign_changes(force, d_min, d_max, n_points);
  std::vector<ZeroCrossing> out;
  out.reserve(brackets.size());
  for (num::Bracket& b : brackets) {
    ZeroCrossing zc;
    zc.d_zero = num::bisect_refine(force, b.lo, b.hi, 1e-10);
    zc.lo = b.lo;
    zc.hi = b.hi;
    zc.refined = true;
    out.push_back(zc);
  }
  return out;
}

}  // namespace casipol
