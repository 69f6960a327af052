#pragma once

#include <cstdint>
#include <iosfwd>

#include "diamcert/bounds.hpp"

namespace diamcert {

/// Outcome of the NON-RIGOROUS binary64 replica of the original checker.
struct ReplicaResult {
  bool success = false;
  bool out_of_memory = false;
  std::int64_t d = 0;
  std::int64_t n = 0;
  double ours = 0;
  double tilde = 0;
};

/// Port of the original C checker: double arrays of `array_length` entries,
/// pow/log bounds, "%.1f" error lines. Proves nothing; it exists to reproduce
/// the historical printouts. Requires l >= 3 and array_length > 0.
ReplicaResult run_float_replica(const BoundParams& p, std::int64_t l, std::int64_t d_ab, std::int64_t array_length,
                                std::ostream& transcript);

}  // namespace diamcert
