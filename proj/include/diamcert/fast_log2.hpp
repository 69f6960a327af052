#pragma once

#include <span>
#include <vector>

#include <gmpxx.h>

namespace diamcert {

/// Closed binary64 interval. Used only as a pre-filter: an outcome decided from
/// these enclosures is sound, and anything closer than the enclosure widths is
/// handed to the MPFR path.
struct DoubleEnclosure {
  double lo = 0;
  double hi = 0;
};

/// Absolute error budget of log2_enclosure at binary exponent k:
/// 2^-40 * (1 + |k|). The evaluation error is below 1e-15 * (1 + |k|); the
/// budget is kept three orders of magnitude wider.
double log2_error_budget(int binary_exponent);

/// Enclosure of log2(x) for finite x > 0. Only IEEE-754 basic operations are
/// used (no libm transcendental): range reduction by frexp to [1/sqrt2, sqrt2),
/// then 2*atanh(s) with s = (r-1)/(r+1) summed through s^19.
DoubleEnclosure log2_enclosure(double x);

/// Enclosure of log2(v) for an integer v >= 1 given by little-endian limbs.
DoubleEnclosure log2_enclosure(std::span<const mp_limb_t> v);

/// log2_enclosure(m) for m = 0..count-1; entry 0 is left as {0, 0}.
std::vector<DoubleEnclosure> log2_table(std::size_t count);

/// Product of two nonnegative enclosures, rounded outward by one ulp per end.
DoubleEnclosure mul_outward(const DoubleEnclosure& a, const DoubleEnclosure& b);

}  // namespace diamcert
