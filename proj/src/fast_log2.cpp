#include "diamcert/fast_log2.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "diamcert/limb_row.hpp"

namespace diamcert {

namespace {

constexpr double kInvLn2 = 1.4426950408889634074;
constexpr double kSqrtHalf = 0.70710678118654752440;
constexpr double kInf = std::numeric_limits<double>::infinity();

double down(double x) { return std::nextafter(x, -kInf); }
double up(double x) { return std::nextafter(x, kInf); }

}  // namespace

double log2_error_budget(int binary_exponent) {
  return std::ldexp(1.0, -40) * (1.0 + std::abs(static_cast<double>(binary_exponent)));
}

DoubleEnclosure log2_enclosure(double x) {
  if (!(x > 0) || !std::isfinite(x)) {
    throw std::domain_error("log2_enclosure needs a finite positive argument");
  }
  int k = 0;
  double r = std::frexp(x, &k);  // x = r * 2^k, r in [0.5, 1)
  if (r < kSqrtHalf) {
    r *= 2;
    --k;
  }
  // r - 1 is exact (Sterbenz); |s| < 0.1716.
  const double s = (r - 1.0) / (r + 1.0);
  const double s2 = s * s;
  double poly = 1.0 / 19.0;
  for (int j = 8; j >= 0; --j) {
    poly = poly * s2 + 1.0 / (2 * j + 1);
  }
  const double log2_r = 2.0 * s * poly * kInvLn2;
  const double approx = static_cast<double>(k) + log2_r;
  const double err = log2_error_budget(k);
  return {down(approx - err), up(approx + err)};
}

DoubleEnclosure log2_enclosure(std::span<const mp_limb_t> v) {
  const std::size_t n = significant_limbs(v);
  if (n == 0) {
    throw std::domain_error("log2_enclosure of zero");
  }
  const mp_limb_t top = v[n - 1];
  const int top_bits = 64 - std::countl_zero(top);
  const std::uint64_t bitlen = (n - 1) * 64 + static_cast<std::uint64_t>(top_bits);
  if (bitlen <= 64) {
    // v fits one limb; conversion to double may round when bitlen > 53.
    DoubleEnclosure e = log2_enclosure(static_cast<double>(v[0]));
    if (bitlen > 53) {
      const double widen = std::ldexp(1.0, -50);
      e.lo = down(e.lo - widen);
      e.hi = up(e.hi + widen);
    }
    return e;
  }
  // t = top 64 bits of v, v in [t, t+1) * 2^shift.
  const std::uint64_t shift = bitlen - 64;
  std::uint64_t t = top << (64 - top_bits);
  if (top_bits < 64) {
    t |= v[n - 2] >> top_bits;
  }
  DoubleEnclosure e = log2_enclosure(static_cast<double>(t));
  const double widen = std::ldexp(1.0, -50);  // covers rounding of t to double and the dropped tail
  const double s = static_cast<double>(shift);
  return {down(down(e.lo - widen) + s), up(up(e.hi + widen) + s)};
}

std::vector<DoubleEnclosure> log2_table(std::size_t count) {
  std::vector<DoubleEnclosure> t(count);
  for (std::size_t m = 1; m < count; ++m) t[m] = log2_enclosure(static_cast<double>(m));
  return t;
}

DoubleEnclosure mul_outward(const DoubleEnclosure& a, const DoubleEnclosure& b) {
  if (a.lo < 0 || b.lo < 0) {
    throw std::domain_error("mul_outward expects nonnegative enclosures");
  }
  return {std::max(0.0, down(a.lo * b.lo)), up(a.hi * b.hi)};
}

}  // namespace diamcert
