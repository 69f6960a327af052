#include "diamcert/compare.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "diamcert/errors.hpp"
#include "diamcert/limb_row.hpp"

namespace diamcert {

const char* to_string(ComparisonOutcome o) {
  switch (o) {
    case ComparisonOutcome::ProvenLess:
      return "less";
    case ComparisonOutcome::ProvenEqual:
      return "equal";
    case ComparisonOutcome::ProvenGreater:
      return "greater";
  }
  return "?";
}

ComparisonOutcome outcome_from_string(const std::string& s) {
  if (s == "less") return ComparisonOutcome::ProvenLess;
  if (s == "equal") return ComparisonOutcome::ProvenEqual;
  if (s == "greater") return ComparisonOutcome::ProvenGreater;
  throw ParseError("unknown comparison outcome '" + s + "'");
}

void CompareStats::merge(const CompareStats& o) {
  exact += o.exact;
  filtered += o.filtered;
  mpfr += o.mpfr;
  max_precision_used = std::max(max_precision_used, o.max_precision_used);
}

mpq_class rational_pow(const mpq_class& q, unsigned long k) {
  mpq_class out;
  mpz_pow_ui(out.get_num_mpz_t(), q.get_num_mpz_t(), k);
  mpz_pow_ui(out.get_den_mpz_t(), q.get_den_mpz_t(), k);
  out.canonicalize();
  return out;
}

namespace {

// t with q = 2^t, if any.
std::optional<long> power_of_two_exponent(mpq_class q) {
  q.canonicalize();
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (sgn(num) <= 0) {
    return std::nullopt;
  }
  if (den == 1 && mpz_popcount(num.get_mpz_t()) == 1) {
    return static_cast<long>(mpz_scan1(num.get_mpz_t(), 0));
  }
  if (num == 1 && mpz_popcount(den.get_mpz_t()) == 1) {
    return -static_cast<long>(mpz_scan1(den.get_mpz_t(), 0));
  }
  return std::nullopt;
}

ComparisonOutcome compare_exact(const mpz_class& V, const mpq_class& f) {
  const int c = cmp(mpq_class(V), f);
  if (c < 0) return ComparisonOutcome::ProvenLess;
  if (c > 0) return ComparisonOutcome::ProvenGreater;
  return ComparisonOutcome::ProvenEqual;
}

std::string triple(const mpz_class& V, std::uint64_t m, const mpq_class& q) {
  return "(V = " + V.get_str() + ", m = " + std::to_string(m) + ", q = " + q.get_str() + ")";
}

void note_precision(CompareStats* stats, mpfr_prec_t p) {
  if (stats) {
    ++stats->mpfr;
    stats->max_precision_used = std::max(stats->max_precision_used, p);
  }
}

}  // namespace

std::optional<mpq_class> exact_power_value(std::uint64_t m, const mpq_class& q_in) {
  mpq_class q(q_in);
  q.canonicalize();
  if (m == 0) {
    return mpq_class(0);
  }
  if (m == 1) {
    return mpq_class(1);
  }
  if (std::has_single_bit(m)) {
    return rational_pow(q, static_cast<unsigned long>(std::countr_zero(m)));
  }
  if (auto t = power_of_two_exponent(q)) {
    mpz_class mp;
    mpz_ui_pow_ui(mp.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(std::labs(*t)));
    if (*t >= 0) {
      return mpq_class(mp);
    }
    return mpq_class(mpz_class(1), mp);
  }
  return std::nullopt;
}

AdaptiveInterval power_enclosure(std::uint64_t m, const mpq_class& q, mpfr_prec_t prec) {
  if (sgn(q) <= 0) {
    throw PreconditionViolated("power base q must be positive");
  }
  if (m <= 1) {
    return AdaptiveInterval::from_integer(mpz_class(static_cast<unsigned long>(m)), prec);
  }
  const auto ln_m = AdaptiveInterval::from_integer(mpz_class(static_cast<unsigned long>(m)), prec).log();
  const auto ln_q = AdaptiveInterval::from_rational(q, prec).log();
  return (ln_m * ln_q / AdaptiveInterval::ln2(prec)).exp();
}

ComparisonOutcome compare_int_vs_power(const mpz_class& V, std::uint64_t m, const mpq_class& q_in,
                                       const CompareOptions& opts, CompareStats* stats) {
  mpq_class q(q_in);
  q.canonicalize();
  if (sgn(q) <= 0) {
    throw PreconditionViolated("power base q must be positive");
  }
  if (sgn(V) < 0) {
    throw PreconditionViolated("compared integer must be nonnegative");
  }
  if (auto f = exact_power_value(m, q)) {
    if (stats) ++stats->exact;
    return compare_exact(V, *f);
  }
  // Here m >= 3, so f > 0.
  if (sgn(V) == 0) {
    if (stats) ++stats->exact;
    return ComparisonOutcome::ProvenLess;
  }
  for (mpfr_prec_t p = opts.start_precision; p <= opts.max_precision; p *= 2) {
    const auto ln2 = AdaptiveInterval::ln2(p);
    const auto lhs = AdaptiveInterval::from_integer(V, p).log() * ln2;
    const auto rhs = AdaptiveInterval::from_rational(q, p).log() *
                     AdaptiveInterval::from_integer(mpz_class(static_cast<unsigned long>(m)), p).log();
    const auto diff = lhs - rhs;
    if (diff.certainly_negative()) {
      note_precision(stats, p);
      return ComparisonOutcome::ProvenLess;
    }
    if (diff.certainly_positive()) {
      note_precision(stats, p);
      return ComparisonOutcome::ProvenGreater;
    }
  }
  throw Undecidable("cannot separate V from m^(log2 q) at " + std::to_string(opts.max_precision) +
                    " bits: " + triple(V, m, q));
}

PowerComparator::PowerComparator(mpq_class q, CompareOptions opts) : q_(std::move(q)), opts_(opts) {
  q_.canonicalize();
  if (sgn(q_) <= 0) {
    throw PreconditionViolated("power base q must be positive");
  }
  q_is_power_of_two_ = power_of_two_exponent(q_).has_value();
  filter_ = opts_.use_float_filter && q_ > 1;
  if (filter_) {
    const auto e = AdaptiveInterval::from_rational(q_, 128).log() / AdaptiveInterval::ln2(128);
    log2_q_ = {e.lower_double(), e.upper_double()};
  }
}

ComparisonOutcome PowerComparator::compare(std::span<const mp_limb_t> V, std::uint64_t m, CompareStats* stats,
                                           double* margin, const DoubleEnclosure* log2_m) const {
  if (margin) *margin = 0;
  if (m <= 1 || std::has_single_bit(m) || q_is_power_of_two_ || !filter_) {
    return compare_int_vs_power(to_mpz(V), m, q_, opts_, stats);
  }
  const std::size_t limbs = significant_limbs(V);
  if (limbs == 0) {
    if (stats) ++stats->exact;
    return ComparisonOutcome::ProvenLess;
  }
  const DoubleEnclosure rhs =
      mul_outward(log2_q_, log2_m ? *log2_m : log2_enclosure(static_cast<double>(m)));
  // 2^(bits-1) <= V < 2^bits settles most pairs without a logarithm.
  const double bits = static_cast<double>(64 * limbs - static_cast<std::size_t>(std::countl_zero(V[limbs - 1])));
  if (bits <= rhs.lo) {
    if (stats) ++stats->filtered;
    if (margin) *margin = rhs.lo - bits;
    return ComparisonOutcome::ProvenLess;
  }
  if (bits - 1 > rhs.hi) {
    if (stats) ++stats->filtered;
    if (margin) *margin = rhs.hi - (bits - 1);
    return ComparisonOutcome::ProvenGreater;
  }
  const DoubleEnclosure lv = log2_enclosure(V);
  if (lv.hi < rhs.lo) {
    if (stats) ++stats->filtered;
    if (margin) *margin = rhs.lo - lv.hi;
    return ComparisonOutcome::ProvenLess;
  }
  if (lv.lo > rhs.hi) {
    if (stats) ++stats->filtered;
    if (margin) *margin = rhs.hi - lv.lo;
    return ComparisonOutcome::ProvenGreater;
  }
  return compare_int_vs_power(to_mpz(V), m, q_, opts_, stats);
}

ComparisonOutcome PowerComparator::compare(const mpz_class& V, std::uint64_t m, CompareStats* stats,
                                           double* margin) const {
  if (sgn(V) < 0) {
    throw PreconditionViolated("compared integer must be nonnegative");
  }
  return compare({mpz_limbs_read(V.get_mpz_t()), mpz_size(V.get_mpz_t())}, m, stats, margin);
}

bool check_inductive_inequality(const BoundParams& p, std::int64_t d, std::uint64_t n,
                                const CompareOptions& opts) {
  const std::uint64_t offset = p.inductive_offset();
  if (d < 2 || n < 2 * static_cast<std::uint64_t>(d) || n < static_cast<std::uint64_t>(d) + offset) {
    throw PreconditionViolated("inductive inequality needs d >= 2, n >= 2d and n >= d + 2^(2a+1); got (" +
                               std::to_string(d) + ", " + std::to_string(n) + ")");
  }
  const auto ud = static_cast<std::uint64_t>(d);
  const std::uint64_t m_full = n - ud;
  const std::uint64_t m_half = n / 2 - ud;
  const mpq_class q_prev = exponent_base(p, d - 1);
  const mpq_class q = exponent_base(p, d);

  for (mpfr_prec_t prec = opts.start_precision; prec <= opts.max_precision; prec *= 2) {
    const auto two = AdaptiveInterval::from_integer(mpz_class(2), prec);
    const auto lhs = power_enclosure(m_full, q_prev, prec) + two * power_enclosure(m_half, q, prec) + two;
    const auto diff = power_enclosure(m_full, q, prec) - lhs;
    if (diff.certainly_positive()) return true;
    if (diff.certainly_negative()) return false;
  }
  const auto a = exact_power_value(m_full, q_prev);
  const auto b = exact_power_value(m_half, q);
  const auto c = exact_power_value(m_full, q);
  if (a && b && c) {
    return *a + 2 * *b + 2 <= *c;
  }
  throw Undecidable("inductive inequality undecided at (d, n) = (" + std::to_string(d) + ", " +
                    std::to_string(n) + ")");
}

bool verify_claim1_pointwise(const BoundParams& p, std::int64_t d) {
  if (d < 1) {
    throw PreconditionViolated("claim-1 check needs d >= 1");
  }
  const mpq_class D = exponent_base(p, d);
  const auto k = static_cast<unsigned long>(2 * p.alpha() + 1);
  const mpq_class inv_alpha(1, static_cast<unsigned long>(p.alpha()));
  const mpq_class lhs = rational_pow(1 - inv_alpha / D, k) + 2 / D + 2 * rational_pow(1 / D, k);
  return lhs <= 1;
}

}  // namespace diamcert
