#include "casipol/special_functions.hpp"

#include <stdexcept>

#include "kernels/pack_scalar.hpp"
#include "kernels/aux_kernels.hpp"

namespace casipol {

using batch::PackScalar;

namespace {

void sici_one(double z, double& si, double& ci) {
  PackScalar s, c;
  if (z < batch::kZSwitch)
    batch::sici_small(PackScalar::broadcast(z), s, c);
  else
    batch::sici_large(PackScalar::broadcast(z), s, c);
  si = s.v;
  ci = c.v;
}

void fg_one(double z, double& f, double& g) {
  PackScalar ff, gg;
  if (z < batch::kZSwitch)
    batch::fg_small(PackScalar::broadcast(z), ff, gg);
  else
    batch::fg_large(PackScalar::broadcast(z), ff, gg);
  f = ff.v;
  g = gg.v;
}

}  // namespace

double sin_integral(double z) {
  if (z < 0.0) throw std::domain_error("sin_integral: z must be >= 0");
  if (z == 0.0) return 0.0;
  double si, ci;
  sici_one(z, si, ci);
  return si;
}

double cos_integral(double z) {
  if (!(z > 0.0)) throw std::domain_error("cos_integral: z must be > 0");
  double si, ci;
  sici_one(z, si, ci);
  return ci;
}

double aux_f(double z) {
  if (z < 0.0) throw std::domain_error("aux_f: z must be >= 0");
  if (z == 0.0) return batch::kHalfPi;
  double f, g;
  fg_one(z, f, g);
  return f;
}

double aux_g(double z) {
  if (!(z > 0.0)) throw std::domain_error("aux_g: z must be > 0");
  double f, g;
  fg_one(z, f, g);
  return g;
}

AuxPair aux_pair(double z) {
  if (!(z > 0.0)) throw std::domain_error("aux_pair: z must be > 0");
  double f, g;
  fg_one(z, f, g);
  return AuxPair{f, g, z};
}

}  // namespace casipol
