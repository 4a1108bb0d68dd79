// pack_scalar.hpp - one-lane "vector" so the kernel templates can be
// instantiated as the plain scalar reference path.

#pragma once

#include <cmath>

namespace casipol::batch {

struct MaskScalar {
  bool m;
  friend MaskScalar operator&(MaskScalar a, MaskScalar b) { return {a.m && b.m}; }
  friend MaskScalar operator|(MaskScalar a, MaskScalar b) { return {a.m || b.m}; }
  friend MaskScalar operator~(MaskScalar a) { return {!a.m}; }
};

inline bool any(MaskScalar m) { return m.m; }
inline bool all(MaskScalar m) { return m.m; }

struct PackScalar {
  static constexpr int width = 1;
  using mask_type = MaskScalar;

  double v;

  static PackScalar broadcast(double x) { return {x}; }
  static PackScalar load(const double* p) { return {*p}; }
  void store(double* p) const { *p = v; }

  friend PackScalar operator+(PackScalar a, PackScalar b) { return {a.v + b.v}; }
  friend PackScalar operator-(PackScalar a, PackScalar b) { return {a.v - b.v}; }
  friend PackScalar operator*(PackScalar a, PackScalar b) { return {a.v * b.v}; }
  friend PackScalar operator/(PackScalar a, PackScalar b) { return {a.v / b.v}; }
  friend PackScalar operator-(PackScalar a) { return {-a.v}; }

  friend MaskScalar operator<(PackScalar a, PackScalar b) { return {a.v < b.v}; }
  friend MaskScalar operator<=(PackScalar a, PackScalar b) { return {a.v <= b.v}; }
  friend MaskScalar operator>(PackScalar a, PackScalar b) { return {a.v > b.v}; }
  friend MaskScalar operator>=(PackScalar a, PackScalar b) { return {a.v >= b.v}; }
};

inline PackScalar abs(PackScalar a) { return {std::fabs(a.v)}; }
inline PackScalar select(MaskScalar c, PackScalar a, PackScalar b) { return c.m ? a : b; }

// Element-wise libm calls; both instantiations go through the same libm so
// results match lane for lane. sin and cos are always taken together via
// sincos: gcc fuses adjacent sin/cos calls into sincos on its own in scalar
// code but cannot in the lane-extracted AVX2 path, and glibc's sincos can
// differ from the standalone functions by an ulp.
inline void sincos_each(PackScalar a, PackScalar& s, PackScalar& c) {
#if defined(__GLIBC__)
  ::sincos(a.v, &s.v, &c.v);
#else
  s.v = std::sin(a.v);
  c.v = std::cos(a.v);
#endif
}
inline PackScalar log_each(PackScalar a) { return {std::log(a.v)}; }

}  // namespace casipol::batch
