#include "casipol/batch.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels/kernel_table.hpp"

namespace casipol::batch {

namespace {

bool cpu_has_avx2() {
#if defined(CASIPOL_HAVE_AVX2) && defined(__GNUC__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend initial_backend() {
  if (const char* env = std::getenv("CASIPOL_BACKEND")) {
    const std::string want(env);
    if (want == "scalar") return Backend::scalar;
    if (want == "avx2" && cpu_has_avx2()) return Backend::avx2;
    // unrecognized or unavailable request: fall through to auto-detect
  }
  return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

Backend& backend_state() {
  static Backend state = initial_backend();
  return state;
}

const KernelTable& table_for(Backend b) {
#if defined(CASIPOL_HAVE_AVX2)
  if (b == Backend::avx2) return avx2_kernels();
#endif
  (void)b;
  return scalar_kernels();
}

const KernelTable& active_table() { return table_for(backend_state()); }

void check_sizes(std::size_t a, std::size_t b, std::size_t c) {
  if (a != b || a != c)
    throw std::invalid_argument("batch: input/output spans must have equal size");
}

}  // namespace

bool backend_available(Backend b) {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
      return cpu_has_avx2();
  }
  return false;
}

Backend active_backend() { return backend_state(); }

bool set_backend(Backend b) {
  if (!backend_available(b)) return false;
  backend_state() = b;
  return true;
}

std::string_view backend_name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

void aux_fg(std::span<const double> z, std::span<double> f, std::span<double> g) {
  check_sizes(z.size(), f.size(), g.size());
  active_table().aux_fg(z.data(), f.data(), g.data(), z.size());
}

void sici(std::span<const double> z, std::span<double> si, std::span<double> ci) {
  check_sizes(z.size(), si.size(), ci.size());
  active_table().sici(z.data(), si.data(), ci.data(), z.size());
}

void wall_force_ground(double mu_sq, double k0, std::span<const double> d,
                       std::span<double> force) {
  check_sizes(d.size(), force.size(), d.size());
  active_table().wall_ground(mu_sq, k0, d.data(), force.data(), d.size());
}

void wall_force_excited(double mu_sq, double k0, std::span<const double> d,
                        std::span<double> force) {
  check_sizes(d.size(), force.size(), d.size());
  active_table().wall_excited(mu_sq, k0, d.data(), force.data(), d.size());
}

void pair_terms(double alpha_prod, std::span<const double> R, std::span<const double> R_bar,
                std::span<const double> sin2_theta, std::span<const double> sin2_theta_bar,
                std::span<double> term_free, std::span<double> term_image,
                std::span<double> term_cross) {
  check_sizes(R.size(), R_bar.size(), sin2_theta.size());
  check_sizes(R.size(), sin2_theta_bar.size(), term_free.size());
  check_sizes(R.size(), term_image.size(), term_cross.size());
  active_table().pair_terms(alpha_prod, R.data(), R_bar.data(), sin2_theta.data(),
                            sin2_theta_bar.data(), term_free.data(), term_image.data(),
                            term_cross.data(), R.size());
}

}  // namespace casipol::batch
