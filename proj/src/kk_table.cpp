#include "diamcert/kk_table.hpp"

#include <map>
#include <ostream>
#include <string>
#include <utility>

#include "diamcert/errors.hpp"

namespace diamcert {

DiameterTable DiameterTable::rolling(std::size_t capacity) {
  if (capacity == 0) {
    throw PreconditionViolated("rolling table needs a positive capacity");
  }
  DiameterTable t;
  t.mode_ = TableMode::Rolling;
  t.capacity_ = capacity;
  t.rows_.resize(2);
  t.rows_[1].resize(capacity);
  fill_row(t.rows_[1], nullptr, 3, 0, capacity);
  return t;
}

DiameterTable DiameterTable::full_memo(std::size_t byte_budget) {
  DiameterTable t;
  t.mode_ = TableMode::FullMemo;
  t.byte_budget_ = byte_budget;
  return t;
}

std::size_t DiameterTable::bytes() const {
  std::size_t total = 0;
  for (const auto& r : rows_) {
    total += r.bytes();
  }
  return total;
}

void DiameterTable::fill_row(LimbRow& row, const LimbRow* prev, std::int64_t d, std::size_t from,
                             std::size_t to) {
  const auto dd = static_cast<std::size_t>(d);
  for (std::size_t i = from; i < to; ++i) {
    if (d == 3) {
      row.set_small(i, i);
    } else if (i < dd) {
      // d <= n < 2d
      row.copy_from(i, *prev, i);
    } else {
      row.set_kk(i, *prev, i, (dd + i) / 2 - dd);
    }
  }
}

void DiameterTable::advance_dimension() {
  if (mode_ != TableMode::Rolling) {
    throw OutOfRange("advance_dimension requires a rolling table");
  }
  std::swap(rows_[0], rows_[1]);
  LimbRow& next = rows_[1];
  next.clear();
  next.widen(rows_[0].width());
  next.resize(capacity_);
  ++current_dim_;
  fill_row(next, &rows_[0], current_dim_, 0, capacity_);
}

void DiameterTable::ensure(std::int64_t d, std::size_t length) {
  if (mode_ != TableMode::FullMemo) {
    throw OutOfRange("ensure requires a full-memo table");
  }
  if (d < 3) {
    throw PreconditionViolated("dimension must be at least 3");
  }
  const auto rows_needed = static_cast<std::size_t>(d - 2);
  if (rows_.size() < rows_needed) {
    rows_.resize(rows_needed);
  }
  // Rows below d must reach `length` first; iterate upward instead of recursing.
  std::size_t projected = 0;
  for (std::size_t k = 0; k < rows_needed; ++k) {
    const auto& r = rows_[k];
    const std::size_t len = std::max(r.size(), length);
    projected += len * r.width() * sizeof(mp_limb_t);
  }
  for (std::size_t k = rows_needed; k < rows_.size(); ++k) {
    projected += rows_[k].bytes();
  }
  if (projected > byte_budget_) {
    throw BudgetExceeded("table for d = " + std::to_string(d) + " with " + std::to_string(length) +
                         " entries per row needs about " + std::to_string(projected) +
                         " bytes, over the budget of " + std::to_string(byte_budget_));
  }
  for (std::size_t k = 0; k < rows_needed; ++k) {
    LimbRow& r = rows_[k];
    const std::size_t old = r.size();
    if (old >= length) {
      continue;
    }
    r.resize(length);
    fill_row(r, k == 0 ? nullptr : &rows_[k - 1], static_cast<std::int64_t>(k) + 3, old, length);
  }
  current_dim_ = std::max<std::int64_t>(current_dim_, d);
}

void DiameterTable::check_rolling_access(std::int64_t d, std::size_t i) const {
  const bool retained = d == current_dim_ || (d == current_dim_ - 1 && current_dim_ > 3);
  if (!retained || i >= capacity_) {
    throw OutOfRange("rolling table holds d in {" + std::to_string(current_dim_ - 1) + ", " +
                     std::to_string(current_dim_) + "} and n - d < " + std::to_string(capacity_) +
                     "; requested (" + std::to_string(d) + ", i = " + std::to_string(i) + ")");
  }
}

std::size_t DiameterTable::materialized_length(std::int64_t d) const {
  if (mode_ != TableMode::FullMemo || d < 3 || static_cast<std::size_t>(d - 3) >= rows_.size()) {
    return 0;
  }
  return rows_[static_cast<std::size_t>(d - 3)].size();
}

const LimbRow& DiameterTable::row(std::int64_t d) const {
  if (mode_ == TableMode::Rolling) {
    check_rolling_access(d, 0);
    return d == current_dim_ ? rows_[1] : rows_[0];
  }
  if (d < 3 || static_cast<std::size_t>(d - 3) >= rows_.size()) {
    throw OutOfRange("row " + std::to_string(d) + " not materialized");
  }
  return rows_[static_cast<std::size_t>(d - 3)];
}

mpz_class DiameterTable::tilde_delta(std::int64_t d, std::uint64_t n) {
  if (d < 3 || n < static_cast<std::uint64_t>(d)) {
    throw PreconditionViolated("tilde_delta needs d >= 3 and n >= d");
  }
  const std::size_t i = n - static_cast<std::uint64_t>(d);
  if (mode_ == TableMode::Rolling) {
    check_rolling_access(d, i);
  } else {
    ensure(d, i + 1);
  }
  return row(d).value(i);
}

void DiameterTable::dump_csv(std::ostream& out, std::int64_t d, std::uint64_t n_lo, std::uint64_t n_hi) {
  out << "d,n,tilde_delta\n";
  for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
    out << d << ',' << n << ',' << tilde_delta(d, n).get_str() << '\n';
  }
}

namespace {

class TopDown {
 public:
  const mpz_class& eval(std::int64_t d, std::uint64_t n) {
    const auto key = std::make_pair(d, n);
    if (auto it = memo_.find(key); it != memo_.end()) {
      return it->second;
    }
    mpz_class v;
    if (d == 3) {
      v = static_cast<unsigned long>(n - 3);
    } else if (n < 2 * static_cast<std::uint64_t>(d)) {
      v = eval(d - 1, n - 1);
    } else {
      v = eval(d - 1, n - 1) + 2 * eval(d, n / 2) + 2;
    }
    return memo_.emplace(key, std::move(v)).first->second;
  }

 private:
  std::map<std::pair<std::int64_t, std::uint64_t>, mpz_class> memo_;
};

}  // namespace

mpz_class oracle_tilde(std::int64_t d, std::uint64_t n) {
  if (d < 3 || n < static_cast<std::uint64_t>(d)) {
    throw PreconditionViolated("oracle_tilde needs d >= 3 and n >= d");
  }
  TopDown td;
  return td.eval(d, n);
}

}  // namespace diamcert
