#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <vector>

#include <gmpxx.h>

#include "diamcert/limb_row.hpp"

namespace diamcert {

enum class TableMode { Rolling, FullMemo };

/// Exact values of the Kalai-Kleitman recursion bound
///
///   T(3, n) = n - 3
///   T(d, n) = T(d-1, n-1)                        for d > 3, d <= n < 2d
///   T(d, n) = T(d-1, n-1) + 2 T(d, floor(n/2)) + 2  for d > 3, n >= 2d
///
/// Entries are addressed by (d, i) with i = n - d.
///
/// Rolling mode keeps rows current_dim-1 and current_dim, each of fixed
/// capacity, and advances one dimension at a time. Full-memo mode keeps every
/// row from d = 3 and grows rows on demand, subject to a byte budget.
class DiameterTable {
 public:
  static constexpr std::size_t kUnlimited = std::numeric_limits<std::size_t>::max();

  /// Rolling table initialised at d = 3 with `capacity` entries per row.
  static DiameterTable rolling(std::size_t capacity);
  /// Full-memo table; BudgetExceeded when growth would pass `byte_budget`.
  static DiameterTable full_memo(std::size_t byte_budget = kUnlimited);

  TableMode mode() const { return mode_; }
  std::int64_t current_dim() const { return current_dim_; }
  std::size_t row_capacity() const { return capacity_; }
  std::size_t byte_budget() const { return byte_budget_; }
  std::size_t bytes() const;

  /// Exact T(d, n). Full-memo mode extends rows lazily; rolling mode throws
  /// OutOfRange unless d is one of the two retained rows and n - d < capacity.
  mpz_class tilde_delta(std::int64_t d, std::uint64_t n);

  /// Rolling mode: compute row current_dim+1 from row current_dim and drop the oldest.
  void advance_dimension();

  /// Full-memo mode: materialize rows 3..d to at least `length` entries.
  void ensure(std::int64_t d, std::size_t length);

  /// Full-memo mode: entries currently held for dimension d (0 if none).
  std::size_t materialized_length(std::int64_t d) const;

  /// Row for dimension d (entries indexed by i = n - d). Rolling mode: d must be retained.
  const LimbRow& row(std::int64_t d) const;

  /// CSV rows "d,n,value" for n in [n_lo, n_hi].
  void dump_csv(std::ostream& out, std::int64_t d, std::uint64_t n_lo, std::uint64_t n_hi);

 private:
  DiameterTable() = default;
  static void fill_row(LimbRow& row, const LimbRow* prev, std::int64_t d, std::size_t from, std::size_t to);
  void check_rolling_access(std::int64_t d, std::size_t i) const;

  TableMode mode_ = TableMode::FullMemo;
  std::int64_t current_dim_ = 3;
  std::size_t capacity_ = 0;
  std::size_t byte_budget_ = kUnlimited;
  // Rolling: rows_[0] = current_dim-1 (empty at d = 3), rows_[1] = current_dim.
  // Full memo: rows_[d-3].
  std::vector<LimbRow> rows_;
};

/// Independent top-down memoized evaluation of the same recursion, used to
/// cross-check DiameterTable. Intended for modest (d, n).
mpz_class oracle_tilde(std::int64_t d, std::uint64_t n);

}  // namespace diamcert
