#include "diamcert/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace diamcert {

RationalPolynomial::RationalPolynomial(std::vector<mpq_class> coefficients) : coeffs_(std::move(coefficients)) {
  for (auto& c : coeffs_) {
    c.canonicalize();
  }
  normalize();
}

void RationalPolynomial::normalize() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) {
    coeffs_.pop_back();
  }
}

RationalPolynomial RationalPolynomial::monomial(const mpq_class& c, std::size_t degree) {
  std::vector<mpq_class> v(degree + 1);
  v[degree] = c;
  return RationalPolynomial(std::move(v));
}

mpq_class RationalPolynomial::coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : mpq_class(0); }

const mpq_class& RationalPolynomial::leading() const {
  if (coeffs_.empty()) {
    throw std::domain_error("zero polynomial has no leading coefficient");
  }
  return coeffs_.back();
}

mpq_class RationalPolynomial::evaluate(const mpq_class& x) const {
  mpq_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

int RationalPolynomial::sign_at(const mpq_class& x) const { return sgn(evaluate(x)); }

int RationalPolynomial::sign_at_plus_infinity() const { return coeffs_.empty() ? 0 : sgn(coeffs_.back()); }

RationalPolynomial RationalPolynomial::derivative() const {
  if (coeffs_.size() <= 1) {
    return {};
  }
  std::vector<mpq_class> v(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    v[k - 1] = coeffs_[k] * static_cast<unsigned long>(k);
  }
  return RationalPolynomial(std::move(v));
}

RationalPolynomial RationalPolynomial::pow(unsigned k) const {
  RationalPolynomial out = constant(1);
  RationalPolynomial base = *this;
  while (k > 0) {
    if (k & 1U) out = out * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return out;
}

RationalPolynomial RationalPolynomial::compose_affine(const mpq_class& a, const mpq_class& b) const {
  const RationalPolynomial inner(std::vector<mpq_class>{b, a});
  RationalPolynomial out;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    out = out * inner + constant(*it);
  }
  return out;
}

RationalPolynomial RationalPolynomial::monic() const {
  if (coeffs_.empty()) {
    return {};
  }
  const mpq_class inv = 1 / coeffs_.back();
  return inv * *this;
}

std::pair<RationalPolynomial, RationalPolynomial> RationalPolynomial::divmod(
    const RationalPolynomial& divisor) const {
  if (divisor.is_zero()) {
    throw std::domain_error("polynomial division by zero");
  }
  std::vector<mpq_class> rem = coeffs_;
  const int dd = divisor.degree();
  if (degree() < dd) {
    return {RationalPolynomial{}, *this};
  }
  std::vector<mpq_class> quot(static_cast<std::size_t>(degree() - dd + 1));
  const mpq_class& lead = divisor.leading();
  for (int k = degree(); k >= dd; --k) {
    const mpq_class c = rem[static_cast<std::size_t>(k)] / lead;
    quot[static_cast<std::size_t>(k - dd)] = c;
    if (sgn(c) == 0) continue;
    for (int j = 0; j <= dd; ++j) {
      rem[static_cast<std::size_t>(k - dd + j)] -= c * divisor.coeffs_[static_cast<std::size_t>(j)];
    }
  }
  rem.resize(static_cast<std::size_t>(dd));
  return {RationalPolynomial(std::move(quot)), RationalPolynomial(std::move(rem))};
}

RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b) {
  std::vector<mpq_class> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < v.size(); ++k) {
    v[k] = a.coeff(k) + b.coeff(k);
  }
  return RationalPolynomial(std::move(v));
}

RationalPolynomial operator-(const RationalPolynomial& a) { return mpq_class(-1) * a; }

RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b) { return a + (-b); }

RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
  if (a.is_zero() || b.is_zero()) {
    return {};
  }
  std::vector<mpq_class> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return RationalPolynomial(std::move(v));
}

RationalPolynomial operator*(const mpq_class& c, const RationalPolynomial& a) {
  std::vector<mpq_class> v(a.coeffs_.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    v[k] = c * a.coeffs_[k];
  }
  return RationalPolynomial(std::move(v));
}

bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) { return a.coeffs_ == b.coeffs_; }

std::string RationalPolynomial::to_string(const std::string& var) const {
  if (coeffs_.empty()) {
    return "0";
  }
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const mpq_class& c = coeffs_[static_cast<std::size_t>(k)];
    if (sgn(c) == 0) continue;
    const bool neg = sgn(c) < 0;
    if (out.empty()) {
      out += neg ? "-" : "";
    } else {
      out += neg ? " - " : " + ";
    }
    const mpq_class mag = abs(c);
    if (k == 0 || mag != 1) {
      out += mag.get_str();
      if (k > 0) out += "*";
    }
    if (k >= 1) out += var;
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out;
}

RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

}  // namespace diamcert
