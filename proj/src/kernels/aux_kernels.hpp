// aux_kernels.hpp - templated kernels for the sine/cosine-integral auxiliary
// functions, the atom-wall force brackets, and the far-zone pair-potential
// terms. The templates are instantiated once with PackScalar (reference
// path) and once with PackAvx2; every lane executes the identical operation
// sequence, so the two paths agree bit for bit.
//
// Branch layout for Si/Ci/f/g:
//   z < kZSwitch : power series for Si and Cin, then f,g by the defining
//                  combination (no cancellation there: f stays O(1)).
//   z >= kZSwitch: f + i g = i * K(i z) with the continued fraction
//                  K(w) = 1/(w+1- 1/(w+3- 4/(w+5- 9/(w+7- ...)))),
//                  evaluated by the modified Lentz scheme. This computes f
//                  and g natively at full relative accuracy; Si and Ci are
//                  reconstructed from them. A truncated asymptotic series
//                  cannot reach 1e-10 relative error until z ~ 30, and the
//                  power series loses ~6 digits to cancellation by then, so
//                  the continued fraction (the Pade resummation of that
//                  asymptotic series) carries the large-z branch instead.

#pragma once

#include <cstddef>

namespace casipol::batch {

inline constexpr double kEulerGamma = 0.57721566490153286061;  // 20 sig digits
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kHalfPi = 1.57079632679489661923;
// Series/continued-fraction split. The series terms peak at ~exp(z) times
// the result, so term rounding leaves absolute jitter ~exp(z) * eps even
// with compensated sums: ~3e-14 at z = 10, which costs six digits in
// finite-difference derivative checks there. At z = 8 the peak term is ~50
// and the jitter is ~6e-15; the continued fraction is clean (noise ~eps)
// from well below that.
inline constexpr double kZSwitch = 8.0;
inline constexpr double kSeriesEps = 1.1102230246251565e-16;
inline constexpr double kCfEps = 4e-16;
inline constexpr int kMaxSeriesTerms = 80;
inline constexpr int kMaxCfIters = 400;

inline constexpr double kPairFreeCoef = -23.0 / (4.0 * kPi);
inline constexpr double kPairCrossCoef = 8.0 / kPi;

template <class P>
typename P::mask_type all_true_mask() {
  return P::broadcast(0.0) <= P::broadcast(0.0);
}

// ---------------------------------------------------------------------------
// complex arithmetic on packs (plain formulas; shared by both instantiations)

template <class P>
struct CPack {
  P re, im;
};

template <class P>
inline CPack<P> cadd(CPack<P> a, CPack<P> b) {
  return {a.re + b.re, a.im + b.im};
}

template <class P>
inline CPack<P> cmul(CPack<P> a, CPack<P> b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

template <class P>
inline CPack<P> cscale(P s, CPack<P> a) {
  return {s * a.re, s * a.im};
}

// 1/a; the arguments here are never near zero (|b_n| >= z >= kZSwitch), the
// guard only keeps a pathological lane from producing inf*0.
template <class P>
inline CPack<P> cinv(CPack<P> a) {
  P den = a.re * a.re + a.im * a.im;
  den = select(den > P::broadcast(0.0), den, P::broadcast(1e-290));
  return {a.re / den, -(a.im / den)};
}

template <class P>
inline CPack<P> cselect(typename P::mask_type m, CPack<P> a, CPack<P> b) {
  return {select(m, a.re, b.re), select(m, a.im, b.im)};
}

// ---------------------------------------------------------------------------
// small z: joint power series for Si(z) and Cin(z)
//
// The alternating terms peak at ~exp(z) times the result near the branch
// switch, so the sums run with Neumaier compensation; without it the
// truncation jitter (~3e-14 absolute at z = 10) leaks into the
// finite-difference derivative checks.

template <class P>
struct CompensatedSum {
  P sum, comp;

  void add(typename P::mask_type active, P term) {
    const P t = sum + term;
    const auto sum_bigger = abs(sum) >= abs(term);
    const P big = select(sum_bigger, sum, term);
    const P small = select(sum_bigger, term, sum);
    const P residue = (big - t) + small;
    comp = select(active, comp + residue, comp);
    sum = select(active, t, sum);
  }

  P value() const { return sum + comp; }
};

template <class P>
inline void sici_series(P z, P& si, P& ci) {
  const P z2 = z * z;
  const P eps = P::broadcast(kSeriesEps);
  const P zero = P::broadcast(0.0);
  P u = z;  // (-1)^n z^(2n+1)/(2n+1)!
  CompensatedSum<P> si_sum{z, zero};
  P v = P::broadcast(1.0);  // (-1)^n z^(2n)/(2n)!
  CompensatedSum<P> cin_sum{zero, zero};
  auto active = all_true_mask<P>();
  for (int n = 1; n <= kMaxSeriesTerms; ++n) {
    const double tn = 2.0 * n;
    u = u * (-z2) / P::broadcast(tn * (tn + 1.0));
    const P si_term = u / P::broadcast(tn + 1.0);
    v = v * (-z2) / P::broadcast((tn - 1.0) * tn);
    const P cin_term = v / P::broadcast(tn);
    si_sum.add(active, si_term);
    cin_sum.add(active, cin_term);
    const auto done = (abs(si_term) <= eps * abs(si_sum.sum)) &
                      (abs(cin_term) <= eps * abs(cin_sum.sum));
    active = active & ~done;
    if (!any(active)) break;
  }
  si = si_sum.value();
  ci = P::broadcast(kEulerGamma) + log_each(z) + cin_sum.value();
}

// ---------------------------------------------------------------------------
// large z: modified Lentz on the continued fraction for f + i g

template <class P>
inline void aux_fg_cf(P z, P& f, P& g) {
  using C = CPack<P>;
  const P zero = P::broadcast(0.0);
  const P one = P::broadcast(1.0);
  // seed small enough to be negligible, large enough that its square (in the
  // complex reciprocal) does not underflow
  C fv{P::broadcast(1e-150), zero};
  C cc = fv;
  C dd{zero, zero};
  auto active = all_true_mask<P>();
  for (int n = 1; n <= kMaxCfIters; ++n) {
    const double a_n = (n == 1) ? 1.0 : -double(n - 1) * double(n - 1);
    const P an = P::broadcast(a_n);
    const C bn{P::broadcast(2.0 * n - 1.0), z};
    const C dnew = cinv(cadd(bn, cscale(an, dd)));
    const C cnew = cadd(bn, cscale(an, cinv(cc)));
    const C delta = cmul(cnew, dnew);
    fv = cselect(active, cmul(fv, delta), fv);
    dd = cselect(active, dnew, dd);
    cc = cselect(active, cnew, cc);
    const P err = abs(delta.re - one) + abs(delta.im);
    active = active & (err > P::broadcast(kCfEps));
    if (!any(active)) break;
  }
  // f + i g = i * K(i z)
  f = -fv.im;
  g = fv.re;
}

// ---------------------------------------------------------------------------
// full evaluations per branch (callers guarantee branch-uniform packs)

template <class P>
inline void fg_small(P z, P& f, P& g) {
  P si, ci;
  sici_series(z, si, ci);
  P s, c;
  sincos_each(z, s, c);
  const P rest = P::broadcast(kHalfPi) - si;
  f = ci * s + rest * c;
  g = rest * s - ci * c;
}

template <class P>
inline void fg_large(P z, P& f, P& g) {
  aux_fg_cf(z, f, g);
}

template <class P>
inline void sici_small(P z, P& si, P& ci) {
  sici_series(z, si, ci);
}

template <class P>
inline void sici_large(P z, P& si, P& ci) {
  P f, g;
  aux_fg_cf(z, f, g);
  P s, c;
  sincos_each(z, s, c);
  si = P::broadcast(kHalfPi) - f * c - g * s;
  ci = f * s - g * c;
}

// ---------------------------------------------------------------------------
// atom-wall force in terms of z = 2 k0 d:
//   ground : F = -mu^2/(12 pi d^4) [4z - (3z^2-6) f - (z^3-6z) g]
//   excited: F = +mu^2/(12 pi d^4) [4z - (3z^2-6)(f - pi cos z)
//                                      - (z^3-6z)(g - pi sin z)]

template <class P>
inline P wall_bracket_ground(P z, P f, P g) {
  const P z2 = z * z;
  const P t1 = P::broadcast(3.0) * z2 - P::broadcast(6.0);
  const P t2 = z * (z2 - P::broadcast(6.0));
  return P::broadcast(4.0) * z - t1 * f - t2 * g;
}

template <class P>
inline P wall_bracket_excited(P z, P f, P g, P sz, P cz) {
  const P pi = P::broadcast(kPi);
  const P z2 = z * z;
  const P t1 = P::broadcast(3.0) * z2 - P::broadcast(6.0);
  const P t2 = z * (z2 - P::broadcast(6.0));
  return P::broadcast(4.0) * z - t1 * (f - pi * cz) - t2 * (g - pi * sz);
}

enum class WallState { ground, excited };

// coef = mu_sq / (12 pi); sign and pi-terms depend on the state.
template <class P, WallState S>
inline P wall_force_eval(P d, P k0_twice, P coef) {
  const P z = k0_twice * d;
  P f, g;
  if (any(z < P::broadcast(kZSwitch))) {
    fg_small(z, f, g);
  } else {
    fg_large(z, f, g);
  }
  const P d2 = d * d;
  const P d4 = d2 * d2;
  P bracket;
  if constexpr (S == WallState::ground) {
    bracket = wall_bracket_ground(z, f, g);
    return -(coef / d4) * bracket;
  } else {
    P sz, cz;
    sincos_each(z, sz, cz);
    bracket = wall_bracket_excited(z, f, g, sz, cz);
    return (coef / d4) * bracket;
  }
}

// ---------------------------------------------------------------------------
// far-zone pair potential terms; c_free = -(23/4pi) aA aB, c_cross = (8/pi) aA aB

template <class P>
inline void pair_terms_eval(P c_free, P c_cross, P R, P Rb, P s2, P s2b,
                            P& t_free, P& t_image, P& t_cross) {
  const P R2 = R * R, R3 = R2 * R, R4 = R2 * R2;
  const P Rb2 = Rb * Rb, Rb3 = Rb2 * Rb, Rb4 = Rb2 * Rb2;
  t_free = c_free / (R4 * R3);
  t_image = c_free / (Rb4 * Rb3);
  const P five = P::broadcast(5.0);
  const P bracket = R4 * s2 + five * R3 * Rb * s2 +
                    R2 * Rb2 * (P::broadcast(6.0) + s2 + s2b) +
                    five * R * Rb3 * s2b + Rb4 * s2b;
  const P rs = R + Rb;
  const P rs2 = rs * rs;
  t_cross = c_cross * (bracket / ((R3 * Rb3) * (rs2 * rs2 * rs)));
}

// ---------------------------------------------------------------------------
// block drivers; mixed-branch and tail elements fall back to the one-lane
// instantiation, which is the identical code path the scalar backend runs.

template <class PW, class P1>
inline void aux_fg_driver(const double* z, double* f, double* g, std::size_t n) {
  constexpr int W = PW::width;
  std::size_t i = 0;
  if constexpr (W > 1) {
    for (; i + W <= n; i += W) {
      int n_small = 0;
      for (int l = 0; l < W; ++l) n_small += (z[i + l] < kZSwitch) ? 1 : 0;
      if (n_small == W) {
        PW ff, gg;
        fg_small(PW::load(z + i), ff, gg);
        ff.store(f + i);
        gg.store(g + i);
      } else if (n_small == 0) {
        PW ff, gg;
        fg_large(PW::load(z + i), ff, gg);
        ff.store(f + i);
        gg.store(g + i);
      } else {
        for (int l = 0; l < W; ++l) {
          P1 ff, gg;
          const P1 zz = P1::broadcast(z[i + l]);
          if (z[i + l] < kZSwitch)
            fg_small(zz, ff, gg);
          else
            fg_large(zz, ff, gg);
          ff.store(f + i + l);
          gg.store(g + i + l);
        }
      }
    }
  }
  for (; i < n; ++i) {
    P1 ff, gg;
    const P1 zz = P1::broadcast(z[i]);
    if (z[i] < kZSwitch)
      fg_small(zz, ff, gg);
    else
      fg_large(zz, ff, gg);
    ff.store(f + i);
    gg.store(g + i);
  }
}

template <class PW, class P1>
inline void sici_driver(const double* z, double* si, double* ci, std::size_t n) {
  constexpr int W = PW::width;
  std::size_t i = 0;
  if constexpr (W > 1) {
    for (; i + W <= n; i += W) {
      int n_small = 0;
      for (int l = 0; l < W; ++l) n_small += (z[i + l] < kZSwitch) ? 1 : 0;
      if (n_small == W) {
        PW s, c;
        sici_small(PW::load(z + i), s, c);
        s.store(si + i);
        c.store(ci + i);
      } else if (n_small == 0) {
        PW s, c;
        sici_large(PW::load(z + i), s, c);
        s.store(si + i);
        c.store(ci + i);
      } else {
        for (int l = 0; l < W; ++l) {
          P1 s, c;
          const P1 zz = P1::broadcast(z[i + l]);
          if (z[i + l] < kZSwitch)
            sici_small(zz, s, c);
          else
            sici_large(zz, s, c);
          s.store(si + i + l);
          c.store(ci + i + l);
        }
      }
    }
  }
  for (; i < n; ++i) {
    P1 s, c;
    const P1 zz = P1::broadcast(z[i]);
    if (z[i] < kZSwitch)
      sici_small(zz, s, c);
    else
      sici_large(zz, s, c);
    s.store(si + i);
    c.store(ci + i);
  }
}

template <class PW, class P1, WallState S>
inline void wall_force_driver(double mu_sq, double k0, const double* d, double* force,
                              std::size_t n) {
  constexpr int W = PW::width;
  const double coef = mu_sq / (12.0 * kPi);
  const double k2 = 2.0 * k0;
  std::size_t i = 0;
  if constexpr (W > 1) {
    const PW coefw = PW::broadcast(coef);
    const PW k2w = PW::broadcast(k2);
    for (; i + W <= n; i += W) {
      int n_small = 0;
      for (int l = 0; l < W; ++l) n_small += (k2 * d[i + l] < kZSwitch) ? 1 : 0;
      if (n_small == 0 || n_small == W) {
        wall_force_eval<PW, S>(PW::load(d + i), k2w, coefw).store(force + i);
      } else {
        for (int l = 0; l < W; ++l) {
          wall_force_eval<P1, S>(P1::broadcast(d[i + l]), P1::broadcast(k2),
                                 P1::broadcast(coef))
              .store(force + i + l);
        }
      }
    }
  }
  for (; i < n; ++i) {
    wall_force_eval<P1, S>(P1::broadcast(d[i]), P1::broadcast(k2), P1::broadcast(coef))
        .store(force + i);
  }
}

template <class PW, class P1>
inline void pair_terms_driver(double alpha_prod, const double* R, const double* Rb,
                              const double* s2, const double* s2b, double* t_free,
                              double* t_image, double* t_cross, std::size_t n) {
  constexpr int W = PW::width;
  const double c_free = kPairFreeCoef * alpha_prod;
  const double c_cross = kPairCrossCoef * alpha_prod;
  std::size_t i = 0;
  if constexpr (W > 1) {
    const PW cf = PW::broadcast(c_free);
    const PW cc = PW::broadcast(c_cross);
    for (; i + W <= n; i += W) {
      PW tf, ti, tc;
      pair_terms_eval(cf, cc, PW::load(R + i), PW::load(Rb + i), PW::load(s2 + i),
                      PW::load(s2b + i), tf, ti, tc);
      tf.store(t_free + i);
      ti.store(t_image + i);
      tc.store(t_cross + i);
    }
  }
  for (; i < n; ++i) {
    P1 tf, ti, tc;
    pair_terms_eval(P1::broadcast(c_free), P1::broadcast(c_cross), P1::broadcast(R[i]),
                    P1::broadcast(Rb[i]), P1::broadcast(s2[i]), P1::broadcast(s2b[i]), tf,
                    ti, tc);
    tf.store(t_free + i);
    ti.store(t_image + i);
    tc.store(t_cross + i);
  }
}

}  // namespace casipol::batch
