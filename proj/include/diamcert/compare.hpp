#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include <gmpxx.h>
#include <mpfr.h>

#include "diamcert/bounds.hpp"
#include "diamcert/fast_log2.hpp"
#include "diamcert/interval.hpp"

namespace diamcert {

/// Position of an integer V relative to the real f it was compared against.
/// ProvenEqual only ever comes from exact arithmetic.
enum class ComparisonOutcome { ProvenLess, ProvenEqual, ProvenGreater };

const char* to_string(ComparisonOutcome o);
ComparisonOutcome outcome_from_string(const std::string& s);

/// V <= f, the pass condition for both Delta~ <= f and Larman <= f.
inline bool at_most(ComparisonOutcome o) { return o != ComparisonOutcome::ProvenGreater; }

struct CompareOptions {
  mpfr_prec_t start_precision = 128;
  mpfr_prec_t max_precision = 8192;
  /// Allow the binary64 enclosure filter in PowerComparator.
  bool use_float_filter = true;
};

struct CompareStats {
  std::uint64_t exact = 0;
  std::uint64_t filtered = 0;
  std::uint64_t mpfr = 0;
  mpfr_prec_t max_precision_used = 0;

  void merge(const CompareStats& o);
};

/// m^(log2 q) when it is rational for a structural reason: m in {0, 1},
/// m = 2^s (value q^s), or q = 2^t for integer t (value m^t).
std::optional<mpq_class> exact_power_value(std::uint64_t m, const mpq_class& q);

/// Enclosure of m^(log2 q) = exp(ln m * ln q / ln 2) at working precision `prec`.
AdaptiveInterval power_enclosure(std::uint64_t m, const mpq_class& q, mpfr_prec_t prec);

/// Sound comparison of the integer V >= 0 against m^(log2 q), q > 0.
/// Exact cases are settled algebraically; otherwise ln V * ln 2 is compared
/// with ln q * ln m by interval evaluation, doubling the precision from
/// start_precision up to max_precision. Throws Undecidable when the
/// enclosures still overlap at max_precision.
ComparisonOutcome compare_int_vs_power(const mpz_class& V, std::uint64_t m, const mpq_class& q,
                                       const CompareOptions& opts = {}, CompareStats* stats = nullptr);

/// compare_int_vs_power specialised to one base q, with a binary64 enclosure
/// filter in front of the MPFR ladder. Outcomes are identical to the plain
/// function; only the route differs.
class PowerComparator {
 public:
  PowerComparator(mpq_class q, CompareOptions opts);

  const mpq_class& base() const { return q_; }

  /// `margin`, when given, receives a lower bound on log2(f) - log2(V) if the
  /// filter decided, and 0 otherwise. `log2_m`, when given, must enclose log2(m).
  ComparisonOutcome compare(std::span<const mp_limb_t> V, std::uint64_t m, CompareStats* stats = nullptr,
                            double* margin = nullptr, const DoubleEnclosure* log2_m = nullptr) const;
  ComparisonOutcome compare(const mpz_class& V, std::uint64_t m, CompareStats* stats = nullptr,
                            double* margin = nullptr) const;

 private:
  mpq_class q_;
  CompareOptions opts_;
  bool q_is_power_of_two_ = false;
  bool filter_ = false;
  DoubleEnclosure log2_q_;
};

/// Certifies f(d-1,n-1) + 2 f(d,floor(n/2)) + 2 <= f(d,n) by interval
/// evaluation. Requires d >= 2, n >= 2d, n >= d + 2^(2a+1)
/// (PreconditionViolated otherwise). Undecidable propagates as an exception.
bool check_inductive_inequality(const BoundParams& p, std::int64_t d, std::uint64_t n,
                                const CompareOptions& opts = {});

/// Exact rational test of
///   (1 - (1/a)/D)^(2a+1) + 2/D + 2 (1/D)^(2a+1) <= 1,  D = beta + d/alpha.
/// Requires d >= 1.
bool verify_claim1_pointwise(const BoundParams& p, std::int64_t d);

/// q^k for k >= 0.
mpq_class rational_pow(const mpq_class& q, unsigned long k);

}  // namespace diamcert
