#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace diamcert {

static_assert(GMP_NUMB_BITS == 64 && GMP_NAIL_BITS == 0, "64-bit nail-free limbs expected");

/// A row of exact nonnegative integers stored as fixed-width limb slots in one
/// flat buffer. The slot width grows on carry-out, so values are unbounded.
class LimbRow {
 public:
  LimbRow() = default;

  std::size_t size() const { return size_; }
  std::size_t width() const { return width_; }
  std::size_t bytes() const { return data_.capacity() * sizeof(mp_limb_t); }

  std::span<const mp_limb_t> limbs(std::size_t i) const {
    return {data_.data() + i * width_, width_};
  }

  mpz_class value(std::size_t i) const;

  /// Grows (zero-filled) or shrinks to n entries.
  void resize(std::size_t n);
  void widen(std::size_t new_width);
  void clear();

  void set(std::size_t i, const mpz_class& v);
  void set_small(std::size_t i, std::uint64_t v);
  /// this[i] = src[si].
  void copy_from(std::size_t i, const LimbRow& src, std::size_t si);
  /// this[i] = prev[pi] + 2 * this[j] + 2, the Kalai-Kleitman recursion step.
  void set_kk(std::size_t i, const LimbRow& prev, std::size_t pi, std::size_t j);

 private:
  mp_limb_t* slot(std::size_t i) { return data_.data() + i * width_; }

  std::size_t size_ = 0;
  std::size_t width_ = 1;
  std::vector<mp_limb_t> data_;
  std::vector<mp_limb_t> scratch_;
};

/// Significant limb count of a slot (0 for zero).
std::size_t significant_limbs(std::span<const mp_limb_t> v);

/// Copy of a slot as mpz_class.
mpz_class to_mpz(std::span<const mp_limb_t> v);

}  // namespace diamcert
