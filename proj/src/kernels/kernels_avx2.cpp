// AVX2 instantiation of the batch kernels. Compiled with -mavx2; only ever
// called after the runtime CPU check in dispatch.cpp.

#include "kernels/kernel_table.hpp"

#if defined(CASIPOL_HAVE_AVX2)

#include "kernels/pack_avx2.hpp"
#include "kernels/pack_scalar.hpp"
#include "kernels/aux_kernels.hpp"

namespace casipol::batch {

namespace {

void aux_fg_impl(const double* z, double* f, double* g, std::size_t n) {
  aux_fg_driver<PackAvx2, PackScalar>(z, f, g, n);
}

void sici_impl(const double* z, double* si, double* ci, std::size_t n) {
  sici_driver<PackAvx2, PackScalar>(z, si, ci, n);
}

void wall_ground_impl(double mu_sq, double k0, const double* d, double* force,
                      std::size_t n) {
  wall_force_driver<PackAvx2, PackScalar, WallState::ground>(mu_sq, k0, d, force, n);
}

void wall_excited_impl(double mu_sq, double k0, const double* d, double* force,
                       std::size_t n) {
  wall_force_driver<PackAvx2, PackScalar, WallState::excited>(mu_sq, k0, d, force, n);
}

void pair_terms_impl(double alpha_prod, const double* R, const double* Rb,
                     const double* s2, const double* s2b, double* t_free,
                     double* t_image, double* t_cross, std::size_t n) {
  pair_terms_driver<PackAvx2, PackScalar>(alpha_prod, R, Rb, s2, s2b, t_free, t_image,
                                          t_cross, n);
}

}  // namespace

const KernelTable& avx2_kernels() {
  static const KernelTable table{aux_fg_impl, sici_impl, wall_ground_impl,
                                 wall_excited_impl, pair_terms_impl};
  return table;
}

}  // namespace casipol::batch

#endif  // CASIPOL_HAVE_AVX2
