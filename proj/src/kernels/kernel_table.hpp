// kernel_table.hpp - function-pointer table one backend fills in.

#pragma once

#include <cstddef>

namespace casipol::batch {

struct KernelTable {
  void (*aux_fg)(const double* z, double* f, double* g, std::size_t n);
  void (*sici)(const double* z, double* si, double* ci, std::size_t n);
  void (*wall_ground)(double mu_sq, double k0, const double* d, double* force,
                      std::size_t n);
  void (*wall_excited)(double mu_sq, double k0, const double* d, double* force,
                       std::size_t n);
  void (*pair_terms)(double alpha_prod, const double* R, const double* Rb,
                     const double* s2, const double* s2b, double* t_free,
                     double* t_image, double* t_cross, std::size_t n);
};

const KernelTable& scalar_kernels();
#if defined(CASIPOL_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif

}  // namespace casipol::batch
