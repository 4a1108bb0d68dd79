#include "casipol/pair_potential.hpp"

#include <cmath>
#include <stdexcept>

#include "casipol/numerics.hpp"
#include "kernels/pack_scalar.hpp"
#include "kernels/aux_kernels.hpp"

namespace casipol {

GeometryFrame geometry_frame(const PairConfiguration& config) {
  if (!(config.z_a > 0.0) || !(config.z_b > 0.0))
    throw std::domain_error("geometry_frame: atom heights must be > 0");
  if (!(config.rho >= 0.0)) throw std::domain_error("geometry_frame: rho must be >= 0");
  const double dz = config.z_a - config.z_b;
  const double sz = config.z_a + config.z_b;
  const double r2 = config.rho * config.rho + dz * dz;
  if (r2 == 0.0) throw std::domain_error("geometry_frame: atoms are coincident");
  const double rb2 = config.rho * config.rho + sz * sz;
  GeometryFrame frame;
  frame.R = std::sqrt(r2);
  frame.R_bar = std::sqrt(rb2);
  frame.sin2_theta = config.rho * config.rho / r2;
  frame.sin2_theta_bar = config.rho * config.rho / rb2;
  return frame;
}

PotentialResult pair_potential_far(const AtomSpec& atom_a, const AtomSpec& atom_b,
                                   const PairConfiguration& config) {
  const GeometryFrame geo = geometry_frame(config);
  const double alpha_prod = atom_a.alpha0 * atom_b.alpha0;
  using batch::PackScalar;
  PackScalar t_free, t_image, t_cross;
  batch::pair_terms_eval(PackScalar::broadcast(batch::kPairFreeCoef * alpha_prod),
                         PackScalar::broadcast(batch::kPairCrossCoef * alpha_prod),
                         PackScalar::broadcast(geo.R), PackScalar::broadcast(geo.R_bar),
                         PackScalar::broadcast(geo.sin2_theta),
                         PackScalar::broadcast(geo.sin2_theta_bar), t_free, t_image,
                         t_cross);
  PotentialResult out;
  out.term_free = t_free.v;
  out.term_image = t_image.v;
  out.term_cross = t_cross.v;
  out.total = out.term_free + out.term_image + out.term_cross;
  out.within_far_zone = (atom_a.k0 * geo.R >= 10.0) && (atom_b.k0 * geo.R >= 10.0);
  return out;
}

namespace {

// (nabla^2 delta_lm - nabla_l nabla_m) cos(k r)/r for the displacement rv:
//   = a(r) delta_lm + b(r) rhat_l rhat_m
// with a = phi'' + phi'/r and b = phi'/r - phi'', phi = cos(k r)/r.
Mat3 oscillating_dipole_tensor(double k, const std::array<double, 3>& rv) {
  const double r2 = rv[0] * rv[0] + rv[1] * rv[1] + rv[2] * rv[2];
  const double r = std::sqrt(r2);
  const double c = std::cos(k * r);
  const double s = std::sin(k * r);
  const double a = (-k * k * c + k * s / r + c / r2) / r;
  const double b = (k * k * c - 3.0 * k * s / r - 3.0 * c / r2) / r;
  Mat3 t{};
  for (int l = 0; l < 3; ++l) {
    for (int m = 0; m < 3; ++m) {
      t[l][m] = b * (rv[l] / r) * (rv[m] / r);
      if (l == m) t[l][m] += a;
    }
  }
  return t;
}

}  // namespace

DipoleTensor dipole_tensor(double k, const PairConfiguration& config) {
  if (!(k >= 0.0)) throw std::domain_error("dipole_tensor: k must be >= 0");
  (void)geometry_frame(config);  // validates the geometry
  const std::array<double, 3> r_direct{config.rho, 0.0, config.z_b - config.z_a};
  const std::array<double, 3> r_image{config.rho, 0.0, -(config.z_b + config.z_a)};
  DipoleTensor out;
  out.free_part = oscillating_dipole_tensor(k, r_direct);
  const Mat3 t_bar = oscillating_dipole_tensor(k, r_image);
  // reflection matrix sigma = diag(-1, -1, +1): the image dipole has its
  // in-plane components reversed and the normal component preserved
  constexpr double sigma[3] = {-1.0, -1.0, 1.0};
  for (int l = 0; l < 3; ++l)
    for (int m = 0; m < 3; ++m) out.image_part[l][m] = sigma[l] * t_bar[l][m];
  for (int l = 0; l < 3; ++l)
    for (int m = 0; m < 3; ++m) out.total[l][m] = out.free_part[l][m] - out.image_part[l][m];
  return out;
}

namespace {

// Pair potential as a function of a displacement of atom B along `u` (unit
// vector); B leaves the x-z plane for u_y != 0, so the lateral separation is
// recombined from both in-plane components.
double displaced_total(const AtomSpec& a, const AtomSpec& b, const PairConfiguration& cfg,
                       const std::array<double, 3>& u, double h) {
  const double bx = cfg.rho + h * u[0];
  const double by = h * u[1];
  PairConfiguration moved;
  moved.rho = std::sqrt(bx * bx + by * by);
  moved.z_a = cfg.z_a;
  moved.z_b = cfg.z_b + h * u[2];
  return pair_potential_far(a, b, moved).total;
}

}  // namespace

PairForce pair_force(const AtomSpec& atom_a, const AtomSpec& atom_b,
                     const PairConfiguration& config, const std::array<double, 3>& direction) {
  const GeometryFrame geo = geometry_frame(config);
  const double norm = std::sqrt(direction[0] * direction[0] + direction[1] * direction[1] +
                                direction[2] * direction[2]);
  if (!(norm > 0.0)) throw std::domain_error("pair_force: direction must be non-zero");
  const std::array<double, 3> u{direction[0] / norm, direction[1] / norm,
                                direction[2] / norm};
  const double h = 1e-5 * std::min(geo.R, config.z_b);
  if (config.z_b - h * std::fabs(u[2]) <= 0.0)
    throw std::runtime_error("pair_force: displacement would cross the plate");
  const auto potential_along = [&](double s) {
    return displaced_total(atom_a, atom_b, config, u, s);
  };
  const num::Derivative d = num::central_derivative(potential_along, 0.0, h);
  return PairForce{-d.value, d.error};
}

AttractivityReport attractivity_scan(const AtomSpec& atom_a, const AtomSpec& atom_b,
                                     std::span<const PairConfiguration> grid) {
  AttractivityReport report;
  report.points.reserve(grid.size());
  for (const PairConfiguration& cfg : grid) {
    AttractivityPoint pt;
    pt.config = cfg;
    pt.violation = false;
    try {
      const GeometryFrame geo = geometry_frame(cfg);
      std::array<double, 3> u_ab{cfg.rho / geo.R, 0.0, (cfg.z_b - cfg.z_a) / geo.R};
      pt.along_ab = pair_force(atom_a, atom_b, cfg, u_ab);
      pt.lateral = pair_force(atom_a, atom_b, cfg, {1.0, 0.0, 0.0});
      // a point violates the attraction claim when the A->B component is not
      // negative beyond its error bar
      pt.violation = !(pt.along_ab.value + pt.along_ab.error < 0.0);
      if (pt.violation) ++report.violations;
    } catch (const std::exception& e) {
      pt.note = e.what();
      pt.along_ab = {0.0, 0.0};
      pt.lateral = {0.0, 0.0};
      ++report.numeric_failures;
    }
    report.points.push_back(std::move(pt));
  }
  return report;
}

std::vector<PairConfiguration> quasi_random_configurations(std::size_t count, double z_lo,
                                                           double z_hi, double rho_hi) {
  // Halton bases 2, 3, 5; deterministic and well spread
  const auto halton = [](std::size_t i, unsigned base) {
    double f = 1.0, r = 0.0;
    for (std::size_t n = i + 1; n > 0; n /= base) {
      f /= base;
      r += f * double(n % base);
    }
    return r;
  };
  std::vector<PairConfiguration> grid;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    PairConfiguration cfg;
    cfg.z_a = z_lo + (z_hi - z_lo) * halton(i, 2);
    cfg.z_b = z_lo + (z_hi - z_lo) * halton(i, 3);
    cfg.rho = rho_hi * halton(i, 5);
    grid.push_back(cfg);
  }
  return grid;
}

}  // namespace casipol
