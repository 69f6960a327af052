#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "diamcert/records.hpp"

namespace diamcert {

const char* tool_version();

/// JSON Lines: one header object, then one object per Sturm certificate,
/// n_L record, check record and comparison. Integers are decimal strings,
/// rationals "num/den", keys sorted.
void write_certificate(std::ostream& out, const Certificate& c);
Certificate read_certificate(std::istream& in);

void write_failure(std::ostream& out, const FailureReport& r);
FailureReport read_failure(std::istream& in);

struct VerifyOptions {
  /// Recompute every recorded tilde value from the recursion.
  bool recompute = false;
  CompareOptions compare;
};

struct VerifyReport {
  bool ok = true;
  std::uint64_t comparisons_replayed = 0;
  std::uint64_t values_recomputed = 0;
  std::vector<std::string> problems;
};

/// Re-checks a certificate without trusting the producer: threshold proof,
/// step bookkeeping, n_L records and crossing margins, and every recorded
/// comparison (replayed through compare_int_vs_power without the float filter).
VerifyReport verify_certificate(const Certificate& c, const VerifyOptions& opts = {});

}  // namespace diamcert
