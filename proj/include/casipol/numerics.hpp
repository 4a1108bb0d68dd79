// numerics.hpp - small numerical helpers: central differences with one
// Richardson refinement, adaptive Simpson quadrature, and sign-change
// bracketing with bisection refinement.

#pragma once

#include <cfloat>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace casipol::num {

struct Derivative {
  double value;
  double error;  // conservative estimate: Richardson defect + rounding floor
};

// d/dx f at x. Central differences at steps h and h/2, Richardson-combined.
template <class F>
Derivative central_derivative(F&& f, double x, double h) {
  if (!(h > 0.0) || h < 256.0 * DBL_MIN)
    throw std::runtime_error("central_derivative: step underflow (h too small)");
  const double f1p = f(x + h);
  const double f1m = f(x - h);
  const double f2p = f(x + 0.5 * h);
  const double f2m = f(x - 0.5 * h);
  const double d1 = (f1p - f1m) / (2.0 * h);
  const double d2 = (f2p - f2m) / h;
  const double value = (4.0 * d2 - d1) / 3.0;
  const double rounding =
      DBL_EPSILON * (std::fabs(f1p) + std::fabs(f1m) + std::fabs(f2p) + std::fabs(f2m)) / h;
  const double error = std::fabs(value - d2) + rounding;
  return {value, error};
}

struct Quadrature {
  double value;
  double error;
  std::size_t evaluations;
  bool converged;
};

namespace detail {

template <class F>
struct SimpsonWorker {
  F& f;
  std::size_t max_evals;
  std::size_t evals = 0;
  double err_accum = 0.0;
  bool converged = true;

  double eval(double x) {
    ++evals;
    return f(x);
  }

  // one panel [a,b] with precomputed endpoint/midpoint values and its
  // Simpson estimate; recursion splits until the 15-point Richardson
  // defect is below the panel's share of the tolerance. Each half is
  // weighted by its own width: the rounded midpoint sits off-center by up
  // to an ulp, and reusing (b-a)/2 for both halves would leave an
  // O(ulp * f) defect that never decays under subdivision.
  //
  // When the defect stops shrinking under subdivision the integrand's own
  // evaluation noise has been reached (smooth panels shrink ~16x per
  // level); such panels are accepted at their noise floor rather than
  // drilled to the width limit.
  double refine(double a, double fa, double m, double fm, double b, double fb,
                double whole, double tol, int depth, double parent_delta) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    const bool at_noise_floor =
        depth >= 12 && std::fabs(delta) >= 0.25 * std::fabs(parent_delta);
    if (std::fabs(delta) <= 15.0 * tol || at_noise_floor || depth >= 52 ||
        evals >= max_evals || lm == a || rm == b) {
      if (std::fabs(delta) > 15.0 * tol && !at_noise_floor) converged = false;
      err_accum += std::fabs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    return refine(a, fa, lm, flm, m, fm, left, 0.5 * tol, depth + 1, delta) +
           refine(m, fm, rm, frm, b, fb, right, 0.5 * tol, depth + 1, delta);
  }
};

}  // namespace detail

// Adaptive Simpson on [a, b]. The integrand must be finite on the closed
// interval. rel_tol applies to a rough first estimate of |integral|.
template <class F>
Quadrature integrate_adaptive(F&& f, double a, double b, double rel_tol = 1e-12,
                              double abs_tol = 0.0, std::size_t max_evals = 2'000'000) {
  if (!(b > a)) return {0.0, 0.0, 0, true};
  detail::SimpsonWorker<F> w{f, max_evals};
  // seed panels give a rough |integral| scale for the relative tolerance;
  // the midpoints are part of the scale so a periodic integrand whose
  // endpoint samples all vanish still registers
  constexpr int kSeed = 16;
  double xs[kSeed + 1], fs[kSeed + 1], ms[kSeed], fms[kSeed];
  for (int i = 0; i <= kSeed; ++i) {
    xs[i] = a + (b - a) * (double(i) / kSeed);
    fs[i] = w.eval(xs[i]);
  }
  double rough = 0.0;
  for (int i = 0; i < kSeed; ++i) {
    ms[i] = 0.5 * (xs[i] + xs[i + 1]);
    fms[i] = w.eval(ms[i]);
    rough += (xs[i + 1] - xs[i]) / 6.0 *
             (std::fabs(fs[i]) + 4.0 * std::fabs(fms[i]) + std::fabs(fs[i + 1]));
  }
  const double tol_total = std::max(abs_tol, rel_tol * std::max(rough, DBL_MIN));
  double total = 0.0;
  const double inf = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kSeed; ++i) {
    const double whole = (xs[i + 1] - xs[i]) / 6.0 * (fs[i] + 4.0 * fms[i] + fs[i + 1]);
    total += w.refine(xs[i], fs[i], ms[i], fms[i], xs[i + 1], fs[i + 1], whole,
                      tol_total / kSeed, 0, inf);
  }
  return {total, w.err_accum, w.evals, w.converged};
}

struct Bracket {
  double lo;
  double hi;
};

// Scans [a, b] on a uniform grid of n_points and returns the sub-intervals
// where f changes sign.
template <class F>
std::vector<Bracket> bracket_sign_changes(F&& f, double a, double b, std::size_t n_points) {
  if (n_points < 2) throw std::invalid_argument("bracket_sign_changes: need >= 2 points");
  std::vector<Bracket> out;
  double x_prev = a;
  double f_prev = f(a);
  for (std::size_t i = 1; i < n_points; ++i) {
    const double x = a + (b - a) * (double(i) / double(n_points - 1));
    const double fx = f(x);
    if ((f_prev < 0.0 && fx > 0.0) || (f_prev > 0.0 && fx < 0.0))
      out.push_back({x_prev, x});
    else if (fx == 0.0 && i + 1 < n_points)
      out.push_back({x, x});
    x_prev = x;
    f_prev = fx;
  }
  return out;
}

// Bisection until |hi-lo| <= rel_width * |midpoint|; pre: sign change on [lo, hi].
template <class F>
double bisect_refine(F&& f, double& lo, double& hi, double rel_width = 1e-10) {
  if (lo == hi) return lo;
  double flo = f(lo);
  if (flo == 0.0) {
    hi = lo;
    return lo;
  }
  const double fhi = f(hi);
  if (fhi == 0.0) {
    lo = hi;
    return hi;
  }
  if ((flo < 0.0) == (fhi < 0.0))
    throw std::invalid_argument("bisect_refine: no sign change on bracket");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (std::fabs(hi - lo) <= rel_width * std::fabs(mid) || mid == lo || mid == hi) break;
    const double fm = f(mid);
    if (fm == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace casipol::num
