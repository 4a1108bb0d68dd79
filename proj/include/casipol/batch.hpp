// batch.hpp - array kernels with runtime backend selection.
//
// The scalar backend is the reference implementation; the AVX2 backend runs
// the same templated kernels four lanes at a time and is selected at startup
// when the CPU supports it. Set the environment variable CASIPOL_BACKEND to
// "scalar" or "avx2" (or call set_backend) to override. Both backends
// produce bit-identical results; the equivalence tests assert that.

#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace casipol::batch {

enum class Backend { scalar, avx2 };

bool backend_available(Backend b);
Backend active_backend();
// Returns false (and leaves the selection unchanged) if b is unavailable.
bool set_backend(Backend b);
std::string_view backend_name(Backend b);

// Auxiliary functions f(z), g(z) of Si/Ci; requires z > 0 elementwise.
void aux_fg(std::span<const double> z, std::span<double> f, std::span<double> g);

// Si(z) and Ci(z); requires z > 0 elementwise.
void sici(std::span<const double> z, std::span<double> si, std::span<double> ci);

// Atom-wall Casimir-Polder force at distances d (reduced units, d > 0).
void wall_force_ground(double mu_sq, double k0, std::span<const double> d,
                       std::span<double> force);
void wall_force_excited(double mu_sq, double k0, std::span<const double> d,
                        std::span<double> force);

// Far-zone pair-potential terms over SoA geometry arrays.
void pair_terms(double alpha_prod, std::span<const double> R, std::span<const double> R_bar,
                std::span<const double> sin2_theta, std::span<const double> sin2_theta_bar,
                std::span<double> term_free, std::span<double> term_image,
                std::span<double> term_cross);

}  // namespace casipol::batch
