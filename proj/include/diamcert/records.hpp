#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "diamcert/bounds.hpp"
#include "diamcert/claim1.hpp"
#include "diamcert/compare.hpp"

namespace diamcert {

enum class Step { B0, B1, B2 };
enum class ArithmeticMode { Rigorous, FloatReplica };
enum class ComparisonKind { TildeVsBound, LarmanVsBound };

/// all: every comparison. critical: the n_L crossings plus the tightest pair of
/// each check record. auto: all when the run is small enough, critical otherwise.
enum class RecordLevel { All, Critical, Auto };

const char* to_string(Step s);
const char* to_string(ArithmeticMode m);
const char* to_string(ComparisonKind k);
const char* to_string(RecordLevel r);
Step step_from_string(const std::string& s);
ArithmeticMode mode_from_string(const std::string& s);
ComparisonKind kind_from_string(const std::string& s);
RecordLevel record_level_from_string(const std::string& s);

/// One certified comparison of V against m^(log2 q).
struct ComparisonRecord {
  ComparisonKind kind = ComparisonKind::TildeVsBound;
  std::int64_t d = 0;
  std::uint64_t n = 0;
  mpz_class V;
  std::uint64_t m = 0;
  mpq_class q;
  ComparisonOutcome outcome = ComparisonOutcome::ProvenLess;

  friend bool operator==(const ComparisonRecord&, const ComparisonRecord&) = default;
};

struct NLRecord {
  std::int64_t d = 0;
  std::uint64_t n_L = 0;
  bool crossing_margin_ok = false;

  friend bool operator==(const NLRecord&, const NLRecord&) = default;
};

struct CheckRecord {
  Step step = Step::B0;
  std::int64_t d = 0;
  std::uint64_t n_lo = 0;
  std::uint64_t n_hi = 0;
  std::uint64_t pairs_checked = 0;
  bool passed = true;
  std::uint64_t failed_at = 0;

  friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

enum class FailureKind { BoundExceeded, CrossingMargin };

const char* to_string(FailureKind k);

/// First failing pair of a run, with the exact table value and a certified
/// enclosure of f.
struct FailureReport {
  std::int64_t alpha = 0;
  std::int64_t beta = 0;
  std::int64_t l = 0;
  std::int64_t d_ab = 0;
  FailureKind kind = FailureKind::BoundExceeded;
  Step step = Step::B0;
  std::int64_t d = 0;
  std::uint64_t n = 0;
  mpz_class tilde_delta;
  /// Outward-rounded decimal enclosure of f(d, n), e.g. "[97.63, 97.64]".
  std::string f_enclosure;
  bool superlinear = true;
  std::vector<NLRecord> nl_records;
  std::vector<CheckRecord> check_records;

  /// "Error: f ∈ [97.63, 97.64] [Ours] < 98 [tilde] (6,24)"
  std::string error_line() const;
};

/// Machine form of a successful run: Delta(d,n) <= f(d,n) for n >= d >= l,
/// restricted to d <= b2_max_d when that cap is set.
struct Certificate {
  std::string format = "diamcert-certificate/1";
  std::string tool_version;
  std::int64_t alpha = 0;
  std::int64_t beta = 0;
  std::int64_t l = 0;
  std::int64_t d_ab = 0;
  DabProvenance dab_provenance = DabProvenance::SturmCertified;
  std::optional<SturmCertificate> sturm;
  bool superlinear = true;
  ArithmeticMode mode = ArithmeticMode::Rigorous;
  mpfr_prec_t max_precision_bits = 0;
  mpfr_prec_t max_precision_used = 0;
  /// When set, Step 2 stopped after this dimension and the certificate is partial.
  std::optional<std::int64_t> b2_max_d;
  RecordLevel record_level = RecordLevel::All;
  std::vector<NLRecord> nl_records;
  std::vector<CheckRecord> check_records;
  std::vector<ComparisonRecord> comparisons;
  CompareStats stats;
  /// Peak bytes held by the Step 2 rolling rows.
  std::uint64_t step2_table_bytes = 0;
  double duration_seconds = 0;

  bool complete() const { return !b2_max_d.has_value(); }
};

}  // namespace diamcert
