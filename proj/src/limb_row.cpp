#include "diamcert/limb_row.hpp"

#include <algorithm>
#include <cstring>

namespace diamcert {

std::size_t significant_limbs(std::span<const mp_limb_t> v) {
  std::size_t n = v.size();
  while (n > 0 && v[n - 1] == 0) {
    --n;
  }
  return n;
}

mpz_class to_mpz(std::span<const mp_limb_t> v) {
  mpz_class out;
  const std::size_t n = significant_limbs(v);
  if (n == 0) {
    return out;
  }
  mp_limb_t* dst = mpz_limbs_write(out.get_mpz_t(), static_cast<mp_size_t>(n));
  std::copy_n(v.data(), n, dst);
  mpz_limbs_finish(out.get_mpz_t(), static_cast<mp_size_t>(n));
  return out;
}

mpz_class LimbRow::value(std::size_t i) const { return to_mpz(limbs(i)); }

void LimbRow::resize(std::size_t n) {
  data_.resize(n * width_, 0);
  size_ = n;
}

void LimbRow::clear() {
  data_.clear();
  data_.shrink_to_fit();
  size_ = 0;
  width_ = 1;
}

void LimbRow::widen(std::size_t new_width) {
  if (new_width <= width_) {
    return;
  }
  std::vector<mp_limb_t> grown(size_ * new_width, 0);
  for (std::size_t i = 0; i < size_; ++i) {
    std::copy_n(data_.data() + i * width_, width_, grown.data() + i * new_width);
  }
  data_ = std::move(grown);
  width_ = new_width;
}

void LimbRow::set(std::size_t i, const mpz_class& v) {
  const std::size_t n = mpz_size(v.get_mpz_t());
  widen(n);
  mp_limb_t* dst = slot(i);
  std::fill_n(dst, width_, 0);
  if (n > 0) {
    std::copy_n(mpz_limbs_read(v.get_mpz_t()), n, dst);
  }
}

void LimbRow::set_small(std::size_t i, std::uint64_t v) {
  mp_limb_t* dst = slot(i);
  std::fill_n(dst, width_, 0);
  dst[0] = v;
}

void LimbRow::copy_from(std::size_t i, const LimbRow& src, std::size_t si) {
  auto s = src.limbs(si);
  const std::size_t n = significant_limbs(s);
  widen(n);
  mp_limb_t* dst = slot(i);
  std::fill_n(dst, width_, 0);
  std::copy_n(s.data(), n, dst);
}

void LimbRow::set_kk(std::size_t i, const LimbRow& prev, std::size_t pi, std::size_t j) {
  auto p = prev.limbs(pi);
  std::size_t pn = significant_limbs(p);
  widen(pn);
  const std::size_t w = width_;

  if (w == 1) {
    // Common case: everything fits a single limb unless a carry appears.
    const mp_limb_t half = data_[j];
    const mp_limb_t a = pn ? p[0] : 0;
    unsigned __int128 sum = static_cast<unsigned __int128>(half) * 2 + a + 2;
    if ((sum >> 64) == 0) {
      data_[i] = static_cast<mp_limb_t>(sum);
      return;
    }
  }

  scratch_.assign(w + 1, 0);
  mp_limb_t* t = scratch_.data();
  mp_limb_t carry = mpn_lshift(t, slot(j), static_cast<mp_size_t>(w), 1);
  if (pn > 0) {
    carry += mpn_add(t, t, static_cast<mp_size_t>(w), p.data(), static_cast<mp_size_t>(pn));
  }
  carry += mpn_add_1(t, t, static_cast<mp_size_t>(w), 2);
  t[w] = carry;
  if (carry != 0) {
    widen(w + 1);
  }
  std::copy_n(t, width_, slot(i));
}

}  // namespace diamcert
