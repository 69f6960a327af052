#pragma once

#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace diamcert {

/// Univariate polynomial with exact rational coefficients; coeff(k) multiplies x^k.
/// Normalized so the leading coefficient is nonzero (the zero polynomial is empty).
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<mpq_class> coefficients);

  static RationalPolynomial monomial(const mpq_class& c, std::size_t degree);
  static RationalPolynomial constant(const mpq_class& c) { return monomial(c, 0); }

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<mpq_class>& coefficients() const { return coeffs_; }
  mpq_class coeff(std::size_t k) const;
  const mpq_class& leading() const;

  mpq_class evaluate(const mpq_class& x) const;
  int sign_at(const mpq_class& x) const;
  int sign_at_plus_infinity() const;

  RationalPolynomial derivative() const;
  RationalPolynomial pow(unsigned k) const;
  /// p(a x + b).
  RationalPolynomial compose_affine(const mpq_class& a, const mpq_class& b) const;
  /// Same polynomial scaled to a monic one (zero stays zero).
  RationalPolynomial monic() const;

  /// Quotient and remainder; throws std::domain_error on division by zero.
  std::pair<RationalPolynomial, RationalPolynomial> divmod(const RationalPolynomial& divisor) const;

  friend RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b);
  friend RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b);
  friend RationalPolynomial operator-(const RationalPolynomial& a);
  friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b);
  friend RationalPolynomial operator*(const mpq_class& c, const RationalPolynomial& a);
  friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b);

  /// e.g. "-1/2*x^4 + 3*x - 7".
  std::string to_string(const std::string& var = "x") const;

 private:
  void normalize();
  std::vector<mpq_class> coeffs_;
};

/// Monic gcd (zero if both are zero).
RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b);

}  // namespace diamcert
