#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include <mpfr.h>

#include "diamcert/fast_log2.hpp"

using namespace diamcert;

namespace {

// log2 of an integer at 256 bits, rounded to nearest, as a double pair bracket.
bool encloses_log2(const mpz_class& v, const DoubleEnclosure& e) {
  mpfr_t x;
  mpfr_init2(x, 256);
  mpfr_set_z(x, v.get_mpz_t(), MPFR_RNDN);
  mpfr_log2(x, x, MPFR_RNDN);
  const bool ok = mpfr_cmp_d(x, e.lo) > 0 && mpfr_cmp_d(x, e.hi) < 0;
  mpfr_clear(x);
  return ok;
}

}  // namespace

TEST_CASE("exact powers of two are enclosed") {
  for (int k = 0; k < 60; ++k) {
    const auto e = log2_enclosure(std::ldexp(1.0, k));
    CHECK(e.lo <= k);
    CHECK(e.hi >= k);
    CHECK(e.hi - e.lo < 1e-9);
  }
}

TEST_CASE("double inputs against MPFR") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20000; ++t) {
    const std::uint64_t v = 1 + (rng() >> (rng() % 63));
    const double x = static_cast<double>(v);
    const auto e = log2_enclosure(x);
    mpz_class z;
    mpz_set_d(z.get_mpz_t(), x);
    CHECK(encloses_log2(z, e));
    CHECK(e.hi - e.lo <= 4 * log2_error_budget(64));
  }
}

TEST_CASE("limb inputs against MPFR, including multi-limb values") {
  std::mt19937_64 rng(12);
  gmp_randclass gr(gmp_randinit_default);
  gr.seed(12);
  for (int t = 0; t < 5000; ++t) {
    const unsigned long bits = 1 + rng() % 400;
    mpz_class z = gr.get_z_bits(bits);
    if (z == 0) z = 1;
    std::vector<mp_limb_t> limbs(mpz_size(z.get_mpz_t()));
    for (std::size_t i = 0; i < limbs.size(); ++i) limbs[i] = mpz_getlimbn(z.get_mpz_t(), static_cast<mp_size_t>(i));
    const auto e = log2_enclosure(std::span<const mp_limb_t>(limbs));
    CHECK(encloses_log2(z, e));
    CHECK(e.hi - e.lo < 1e-6);
  }
}

TEST_CASE("mul_outward contains the real product") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  for (int t = 0; t < 1000; ++t) {
    const double x = u(rng), y = u(rng);
    const auto p = mul_outward(DoubleEnclosure{x, x}, DoubleEnclosure{y, y});
    const mpq_class exact = mpq_class(x) * mpq_class(y);
    CHECK(mpq_class(p.lo) <= exact);
    CHECK(mpq_class(p.hi) >= exact);
  }
}
