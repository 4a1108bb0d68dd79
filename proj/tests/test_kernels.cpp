// Backend equivalence: the AVX2 kernels must reproduce the scalar reference
// path bit for bit (same operation sequence per lane, no FMA contraction).

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "casipol/batch.hpp"
#include "casipol/pair_potential.hpp"
#include "casipol/special_functions.hpp"
#include "casipol/units.hpp"
#include "casipol/wall_force.hpp"

using namespace casipol;

namespace {

// deterministic z grids covering both branches, the switch point, and an
// interleaving that forces mixed blocks
std::vector<double> test_grid() {
  std::vector<double> z;
  for (int i = 0; i <= 500; ++i) z.push_back(std::pow(10.0, -3.0 + 6.0 * i / 500.0));
  for (int i = 0; i < 100; ++i) z.push_back(i % 2 ? 0.5 + i * 0.01 : 15.0 + i * 0.31);
  z.push_back(7.999999);
  z.push_back(8.0);
  z.push_back(8.000001);
  return z;
}

struct BackendGuard {
  batch::Backend saved;
  BackendGuard() : saved(batch::active_backend()) {}
  ~BackendGuard() { batch::set_backend(saved); }
};

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  return std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar backend is always available") {
  CHECK(batch::backend_available(batch::Backend::scalar));
  BackendGuard guard;
  CHECK(batch::set_backend(batch::Backend::scalar));
  CHECK(batch::active_backend() == batch::Backend::scalar);
}

TEST_CASE("batch aux_fg matches the single-point api exactly") {
  BackendGuard guard;
  REQUIRE(batch::set_backend(batch::Backend::scalar));
  const std::vector<double> z = test_grid();
  std::vector<double> f(z.size()), g(z.size());
  batch::aux_fg(z, f, g);
  for (std::size_t i = 0; i < z.size(); ++i) {
    CHECK(f[i] == aux_f(z[i]));
    CHECK(g[i] == aux_g(z[i]));
  }
}

TEST_CASE("batch sici matches the single-point api exactly") {
  BackendGuard guard;
  REQUIRE(batch::set_backend(batch::Backend::scalar));
  const std::vector<double> z = test_grid();
  std::vector<double> si(z.size()), ci(z.size());
  batch::sici(z, si, ci);
  for (std::size_t i = 0; i < z.size(); ++i) {
    CHECK(si[i] == sin_integral(z[i]));
    CHECK(ci[i] == cos_integral(z[i]));
  }
}

TEST_CASE("avx2 backend reproduces the scalar results bit for bit") {
  if (!batch::backend_available(batch::Backend::avx2)) {
    MESSAGE("avx2 not available on this host; skipping equivalence checks");
    return;
  }
  BackendGuard guard;
  const std::vector<double> z = test_grid();
  const std::size_t n = z.size();

  std::vector<double> f_s(n), g_s(n), si_s(n), ci_s(n), wg_s(n), we_s(n);
  std::vector<double> f_v(n), g_v(n), si_v(n), ci_v(n), wg_v(n), we_v(n);

  REQUIRE(batch::set_backend(batch::Backend::scalar));
  batch::aux_fg(z, f_s, g_s);
  batch::sici(z, si_s, ci_s);
  batch::wall_force_ground(1.5, 0.5, z, wg_s);
  batch::wall_force_excited(1.5, 0.5, z, we_s);

  REQUIRE(batch::set_backend(batch::Backend::avx2));
  CHECK(batch::active_backend() == batch::Backend::avx2);
  batch::aux_fg(z, f_v, g_v);
  batch::sici(z, si_v, ci_v);
  batch::wall_force_ground(1.5, 0.5, z, wg_v);
  batch::wall_force_excited(1.5, 0.5, z, we_v);

  CHECK(bit_equal(f_s, f_v));
  CHECK(bit_equal(g_s, g_v));
  CHECK(bit_equal(si_s, si_v));
  CHECK(bit_equal(ci_s, ci_v));
  CHECK(bit_equal(wg_s, wg_v));
  CHECK(bit_equal(we_s, we_v));
}

TEST_CASE("pair terms: avx2 vs scalar and vs the module") {
  // SoA geometry from a quasi-random configuration set
  const auto grid = quasi_random_configurations(257, 0.1, 10.0, 10.0);
  const std::size_t n = grid.size();
  std::vector<double> R(n), Rb(n), s2(n), s2b(n);
  for (std::size_t i = 0; i < n; ++i) {
    const GeometryFrame geo = geometry_frame(grid[i]);
    R[i] = geo.R;
    Rb[i] = geo.R_bar;
    s2[i] = geo.sin2_theta;
    s2b[i] = geo.sin2_theta_bar;
  }
  const double alpha_prod = 0.75;
  std::vector<double> tf_s(n), ti_s(n), tc_s(n), tf_v(n), ti_v(n), tc_v(n);

  BackendGuard guard;
  REQUIRE(batch::set_backend(batch::Backend::scalar));
  batch::pair_terms(alpha_prod, R, Rb, s2, s2b, tf_s, ti_s, tc_s);

  // module single-point path must agree exactly with the batch kernel
  const AtomSpec a = make_two_level_atom_from_alpha(0.5, 1.0);
  const AtomSpec b = make_two_level_atom_from_alpha(1.5, 1.0);
  for (std::size_t i = 0; i < n; i += 41) {
    const PotentialResult r = pair_potential_far(a, b, grid[i]);
    CHECK(r.term_free == tf_s[i]);
    CHECK(r.term_image == ti_s[i]);
    CHECK(r.term_cross == tc_s[i]);
  }

  if (batch::backend_available(batch::Backend::avx2)) {
    REQUIRE(batch::set_backend(batch::Backend::avx2));
    batch::pair_terms(alpha_prod, R, Rb, s2, s2b, tf_v, ti_v, tc_v);
    CHECK(bit_equal(tf_s, tf_v));
    CHECK(bit_equal(ti_s, ti_v));
    CHECK(bit_equal(tc_s, tc_v));
  }
}

TEST_CASE("span size mismatch is rejected") {
  std::vector<double> z(8, 1.0), f(8), g(7);
  CHECK_THROWS_AS(batch::aux_fg(z, f, g), std::invalid_argument);
}

TEST_CASE("environment override names") {
  CHECK(batch::backend_name(batch::Backend::scalar) == "scalar");
  CHECK(batch::backend_name(batch::Backend::avx2) == "avx2");
}

}  // TEST_SUITE
