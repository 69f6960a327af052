#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <variant>
#include <vector>

#include "diamcert/bounds.hpp"
#include "diamcert/compare.hpp"
#include "diamcert/kk_table.hpp"
#include "diamcert/records.hpp"

namespace diamcert {

struct CheckerConfig {
  explicit CheckerConfig(BoundParams p) : params(p) {}

  BoundParams params;
  /// nullopt selects the smallest passing l in [l_start, l_max].
  std::optional<std::int64_t> l;
  /// nullopt runs certify_dab.
  std::optional<std::int64_t> d_ab;
  ArithmeticMode mode = ArithmeticMode::Rigorous;
  mpfr_prec_t max_precision_bits = 8192;
  /// Bytes allowed for the Step 0/1 table.
  std::size_t memory_budget = std::size_t{256} << 20;
  std::int64_t l_start = 3;
  std::int64_t l_max = 64;
  /// Last dimension scanned in Step 2; nullopt scans the full range.
  std::optional<std::int64_t> b2_max_d;
  /// Longest Step 0 scan when f(l, .) is not superlinear.
  std::uint64_t witness_scan_limit = std::uint64_t{1} << 20;
  RecordLevel record_level = RecordLevel::Auto;
  /// Above this many Step 2 pairs, Auto records only the critical comparisons.
  std::uint64_t auto_record_limit = 200000;
  /// Human-readable progress in the style of the original checker.
  std::ostream* transcript = nullptr;
};

/// n_L(d) with the convexity-margin certificate. Requires
/// check_superlinearity(p, d) and d >= 3. BudgetExceeded once n passes n_limit.
NLRecord find_n_L(const BoundParams& p, std::int64_t d, std::uint64_t n_start, const CompareOptions& opts = {},
                  std::uint64_t n_limit = std::uint64_t{1} << 32);

/// Certified f(d, n+1) - f(d, n) >= 2^(d-3).
bool crossing_margin_holds(const BoundParams& p, std::int64_t d, std::uint64_t n, const CompareOptions& opts = {});

using RunResult = std::variant<Certificate, FailureReport>;

/// One pass of the three-step procedure for a fixed l (cfg.l must be set;
/// l >= 3). cfg.mode must be Rigorous.
RunResult run_checker(const CheckerConfig& cfg);

/// Same, reusing a caller-owned full-memo table and a precomputed threshold.
RunResult run_checker(const CheckerConfig& cfg, std::int64_t l, const DabResult& dab, DiameterTable& memo);

/// Resolves d_ab for a config: certify_dab for Auto, or the override after it
/// passes verify_claim1_pointwise and its Sturm certificate is valid
/// (PreconditionViolated otherwise).
DabResult resolve_dab(const CheckerConfig& cfg);

struct AttemptRecord {
  std::int64_t l = 0;
  bool superlinear = true;
  std::optional<FailureReport> failure;
};

struct AutoLResult {
  std::vector<AttemptRecord> attempts;
  /// Set when some l <= l_max succeeded.
  std::optional<Certificate> certificate;

  bool exhausted() const { return !certificate.has_value(); }
};

/// Outer loop over l = l_start..l_max. Requires 3 <= l_start <= l_max.
AutoLResult auto_l(const CheckerConfig& cfg);

}  // namespace diamcert
