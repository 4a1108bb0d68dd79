// pack_avx2.hpp - four-lane AVX2 double pack with the same interface as
// PackScalar. No FMA anywhere; together with -ffp-contract=off this keeps
// the lanes bit-identical to the scalar reference path.

#pragma once

#include <immintrin.h>

#include <cmath>

namespace casipol::batch {

struct MaskAvx2 {
  __m256d m;  // all-ones / all-zeros per lane
  friend MaskAvx2 operator&(MaskAvx2 a, MaskAvx2 b) { return {_mm256_and_pd(a.m, b.m)}; }
  friend MaskAvx2 operator|(MaskAvx2 a, MaskAvx2 b) { return {_mm256_or_pd(a.m, b.m)}; }
  friend MaskAvx2 operator~(MaskAvx2 a) {
    return {_mm256_xor_pd(a.m, _mm256_castsi256_pd(_mm256_set1_epi64x(-1)))};
  }
};

inline bool any(MaskAvx2 m) { return _mm256_movemask_pd(m.m) != 0; }
inline bool all(MaskAvx2 m) { return _mm256_movemask_pd(m.m) == 0xf; }

struct PackAvx2 {
  static constexpr int width = 4;
  using mask_type = MaskAvx2;

  __m256d v;

  static PackAvx2 broadcast(double x) { return {_mm256_set1_pd(x)}; }
  static PackAvx2 load(const double* p) { return {_mm256_loadu_pd(p)}; }
  void store(double* p) const { _mm256_storeu_pd(p, v); }

  friend PackAvx2 operator+(PackAvx2 a, PackAvx2 b) { return {_mm256_add_pd(a.v, b.v)}; }
  friend PackAvx2 operator-(PackAvx2 a, PackAvx2 b) { return {_mm256_sub_pd(a.v, b.v)}; }
  friend PackAvx2 operator*(PackAvx2 a, PackAvx2 b) { return {_mm256_mul_pd(a.v, b.v)}; }
  friend PackAvx2 operator/(PackAvx2 a, PackAvx2 b) { return {_mm256_div_pd(a.v, b.v)}; }
  friend PackAvx2 operator-(PackAvx2 a) {
    return {_mm256_xor_pd(a.v, _mm256_set1_pd(-0.0))};
  }

  friend MaskAvx2 operator<(PackAvx2 a, PackAvx2 b) {
    return {_mm256_cmp_pd(a.v, b.v, _CMP_LT_OQ)};
  }
  friend MaskAvx2 operator<=(PackAvx2 a, PackAvx2 b) {
    return {_mm256_cmp_pd(a.v, b.v, _CMP_LE_OQ)};
  }
  friend MaskAvx2 operator>(PackAvx2 a, PackAvx2 b) {
    return {_mm256_cmp_pd(a.v, b.v, _CMP_GT_OQ)};
  }
  friend MaskAvx2 operator>=(PackAvx2 a, PackAvx2 b) {
    return {_mm256_cmp_pd(a.v, b.v, _CMP_GE_OQ)};
  }
};

inline PackAvx2 abs(PackAvx2 a) {
  return {_mm256_andnot_pd(_mm256_set1_pd(-0.0), a.v)};
}

inline PackAvx2 select(MaskAvx2 c, PackAvx2 a, PackAvx2 b) {
  return {_mm256_blendv_pd(b.v, a.v, c.m)};
}

// Per-lane libm calls, matching the PackScalar definitions exactly (see the
// sincos note there).
inline void sincos_each(PackAvx2 a, PackAvx2& s, PackAvx2& c) {
  alignas(32) double in[4], so[4], co[4];
  _mm256_store_pd(in, a.v);
  for (int i = 0; i < 4; ++i) {
#if defined(__GLIBC__)
    ::sincos(in[i], &so[i], &co[i]);
#else
    so[i] = std::sin(in[i]);
    co[i] = std::cos(in[i]);
#endif
  }
  s.v = _mm256_load_pd(so);
  c.v = _mm256_load_pd(co);
}

inline PackAvx2 log_each(PackAvx2 a) {
  alignas(32) double tmp[4];
  _mm256_store_pd(tmp, a.v);
  for (double& x : tmp) x = std::log(x);
  return {_mm256_load_pd(tmp)};
}

}  // namespace casipol::batch
