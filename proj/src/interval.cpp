#include "diamcert/interval.hpp"

#include <algorithm>
#include <stdexcept>

namespace diamcert {

namespace {

std::string decimal_string(const mpz_class& scaled, int decimals) {
  std::string digits = mpz_class(abs(scaled)).get_str();
  if (decimals > 0) {
    if (digits.size() <= static_cast<std::size_t>(decimals)) {
      digits.insert(0, static_cast<std::size_t>(decimals) + 1 - digits.size(), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(decimals), ".");
  }
  return (sgn(scaled) < 0 ? "-" : "") + digits;
}

// v * 10^decimals rounded to an integer in direction `rnd` (RNDD floors, RNDU ceils).
mpz_class scaled_round(mpfr_srcptr v, int decimals, mpfr_rnd_t rnd) {
  mpfr_t t;
  mpfr_init2(t, mpfr_get_prec(v) + 64);
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(decimals));
  mpfr_mul_z(t, v, ten_pow.get_mpz_t(), rnd);
  mpz_class out;
  mpfr_get_z(out.get_mpz_t(), t, rnd);
  mpfr_clear(t);
  return out;
}

}  // namespace

AdaptiveInterval::AdaptiveInterval(mpfr_prec_t precision) : precision_(precision) {
  mpfr_init2(lo_, precision);
  mpfr_init2(hi_, precision);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

AdaptiveInterval::AdaptiveInterval(const AdaptiveInterval& other) : precision_(other.precision_) {
  mpfr_init2(lo_, precision_);
  mpfr_init2(hi_, precision_);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

AdaptiveInterval::AdaptiveInterval(AdaptiveInterval&& other) noexcept : precision_(other.precision_) {
  mpfr_init2(lo_, precision_);
  mpfr_init2(hi_, precision_);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

AdaptiveInterval& AdaptiveInterval::operator=(const AdaptiveInterval& other) {
  if (this != &other) {
    precision_ = other.precision_;
    mpfr_set_prec(lo_, precision_);
    mpfr_set_prec(hi_, precision_);
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

AdaptiveInterval& AdaptiveInterval::operator=(AdaptiveInterval&& other) noexcept {
  std::swap(precision_, other.precision_);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

AdaptiveInterval::~AdaptiveInterval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

AdaptiveInterval AdaptiveInterval::from_integer(const mpz_class& v, mpfr_prec_t precision) {
  AdaptiveInterval r(precision);
  mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
  return r;
}

AdaptiveInterval AdaptiveInterval::from_rational(const mpq_class& v, mpfr_prec_t precision) {
  AdaptiveInterval r(precision);
  mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
  return r;
}

AdaptiveInterval AdaptiveInterval::ln2(mpfr_prec_t precision) {
  AdaptiveInterval r(precision);
  mpfr_const_log2(r.lo_, MPFR_RNDD);
  mpfr_const_log2(r.hi_, MPFR_RNDU);
  return r;
}

AdaptiveInterval AdaptiveInterval::log() const {
  if (mpfr_sgn(lo_) <= 0) {
    throw std::domain_error("log of an interval that is not strictly positive");
  }
  AdaptiveInterval r(precision_);
  mpfr_log(r.lo_, lo_, MPFR_RNDD);
  mpfr_log(r.hi_, hi_, MPFR_RNDU);
  return r;
}

AdaptiveInterval AdaptiveInterval::exp() const {
  AdaptiveInterval r(precision_);
  mpfr_exp(r.lo_, lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, hi_, MPFR_RNDU);
  return r;
}

AdaptiveInterval operator+(const AdaptiveInterval& a, const AdaptiveInterval& b) {
  AdaptiveInterval r(std::max(a.precision_, b.precision_));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

AdaptiveInterval operator-(const AdaptiveInterval& a, const AdaptiveInterval& b) {
  AdaptiveInterval r(std::max(a.precision_, b.precision_));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

AdaptiveInterval operator*(const AdaptiveInterval& a, const AdaptiveInterval& b) {
  const mpfr_prec_t p = std::max(a.precision_, b.precision_);
  AdaptiveInterval r(p);
  mpfr_t t;
  mpfr_init2(t, p);
  mpfr_srcptr as[2] = {a.lo_, a.hi_};
  mpfr_srcptr bs[2] = {b.lo_, b.hi_};
  bool first = true;
  for (auto x : as) {
    for (auto y : bs) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) {
        mpfr_set(r.lo_, t, MPFR_RNDD);
      }
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) {
        mpfr_set(r.hi_, t, MPFR_RNDU);
      }
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}

AdaptiveInterval operator/(const AdaptiveInterval& a, const AdaptiveInterval& b) {
  if (!b.certainly_positive() && !b.certainly_negative()) {
    throw std::domain_error("division by an interval containing zero");
  }
  const mpfr_prec_t p = std::max(a.precision_, b.precision_);
  AdaptiveInterval r(p);
  mpfr_t t;
  mpfr_init2(t, p);
  mpfr_srcptr as[2] = {a.lo_, a.hi_};
  mpfr_srcptr bs[2] = {b.lo_, b.hi_};
  bool first = true;
  for (auto x : as) {
    for (auto y : bs) {
      mpfr_div(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) {
        mpfr_set(r.lo_, t, MPFR_RNDD);
      }
      mpfr_div(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) {
        mpfr_set(r.hi_, t, MPFR_RNDU);
      }
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}

bool AdaptiveInterval::certainly_negative() const { return mpfr_sgn(hi_) < 0; }
bool AdaptiveInterval::certainly_positive() const { return mpfr_sgn(lo_) > 0; }

void AdaptiveInterval::tighten(const AdaptiveInterval& other) {
  // Directed rounding at this precision keeps the result inside both enclosures.
  if (mpfr_less_p(lo_, other.lo_)) {
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
  }
  if (mpfr_greater_p(hi_, other.hi_)) {
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
}

double AdaptiveInterval::lower_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double AdaptiveInterval::upper_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

std::string AdaptiveInterval::format_outward(int decimals) const {
  return "[" + decimal_string(scaled_round(lo_, decimals, MPFR_RNDD), decimals) + ", " +
         decimal_string(scaled_round(hi_, decimals, MPFR_RNDU), decimals) + "]";
}

std::string AdaptiveInterval::format_midpoint(int decimals) const {
  mpfr_t mid;
  mpfr_init2(mid, precision_ + 1);
  mpfr_add(mid, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
  const std::string s = decimal_string(scaled_round(mid, decimals, MPFR_RNDN), decimals);
  mpfr_clear(mid);
  return s;
}

}  // namespace diamcert
