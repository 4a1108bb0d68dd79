// special_functions.hpp - sine integral Si, cosine integral Ci, and their
// auxiliary functions f, g.
//
//   Si(z) = int_0^z sin t / t dt
//   Ci(z) = gamma + ln z + int_0^z (cos t - 1)/t dt
//   f(z)  = Ci(z) sin z + (pi/2 - Si(z)) cos z
//   g(z)  = -Ci(z) cos z + (pi/2 - Si(z)) sin z
//
// f and g decay algebraically (f ~ 1/z, g ~ 1/z^2) and are evaluated natively
// at large z, where the defining combinations would cancel catastrophically.
// Relative accuracy is ~1e-13 or better over z in [1e-3, 1e3].

#pragma once

namespace casipol {

// 20 significant digits.
inline constexpr double euler_gamma = 0.57721566490153286061;

// Si(z); requires z >= 0.
double sin_integral(double z);

// Ci(z); requires z > 0 (logarithmic singularity at 0).
double cos_integral(double z);

// f(z); requires z >= 0; f(0) = pi/2.
double aux_f(double z);

// g(z); requires z > 0 (diverges as -gamma - ln z at 0).
double aux_g(double z);

struct AuxPair {
  double f;
  double g;
  double z;
};

// Both auxiliary functions at once (one series / continued-fraction pass).
AuxPair aux_pair(double z);

}  // namespace casipol
