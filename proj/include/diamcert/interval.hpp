#pragma once

#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace diamcert {

/// Closed interval [lower, upper] of MPFR numbers at a fixed working
/// precision. Every operation rounds the lower end down and the upper end up,
/// so the enclosure contract (lower <= true value <= upper) is preserved.
class AdaptiveInterval {
 public:
  explicit AdaptiveInterval(mpfr_prec_t precision);
  AdaptiveInterval(const AdaptiveInterval& other);
  AdaptiveInterval(AdaptiveInterval&& other) noexcept;
  AdaptiveInterval& operator=(const AdaptiveInterval& other);
  AdaptiveInterval& operator=(AdaptiveInterval&& other) noexcept;
  ~AdaptiveInterval();

  static AdaptiveInterval from_integer(const mpz_class& v, mpfr_prec_t precision);
  static AdaptiveInterval from_rational(const mpq_class& v, mpfr_prec_t precision);
  static AdaptiveInterval ln2(mpfr_prec_t precision);

  mpfr_prec_t precision() const { return precision_; }
  mpfr_srcptr lower() const { return lo_; }
  mpfr_srcptr upper() const { return hi_; }

  /// Natural logarithm. Requires lower > 0.
  AdaptiveInterval log() const;
  AdaptiveInterval exp() const;

  friend AdaptiveInterval operator+(const AdaptiveInterval& a, const AdaptiveInterval& b);
  friend AdaptiveInterval operator-(const AdaptiveInterval& a, const AdaptiveInterval& b);
  friend AdaptiveInterval operator*(const AdaptiveInterval& a, const AdaptiveInterval& b);
  /// Requires b to exclude zero.
  friend AdaptiveInterval operator/(const AdaptiveInterval& a, const AdaptiveInterval& b);

  bool certainly_negative() const;
  bool certainly_positive() const;
  bool contains_zero() const { return !certainly_negative() && !certainly_positive(); }

  /// Intersect with another enclosure of the same quantity; never widens.
  void tighten(const AdaptiveInterval& other);

  double lower_double() const;
  double upper_double() const;

  /// "[lo, hi]" with both ends rounded outward to `decimals` places.
  std::string format_outward(int decimals) const;
  /// Midpoint rendered with `decimals` places (display only).
  std::string format_midpoint(int decimals) const;

 private:
  mpfr_prec_t precision_;
  mpfr_t lo_;
  mpfr_t hi_;
};

}  // namespace diamcert
