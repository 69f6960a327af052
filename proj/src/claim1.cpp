#include "diamcert/claim1.hpp"

#include <algorithm>

#include "diamcert/compare.hpp"
#include "diamcert/errors.hpp"

namespace diamcert {

RationalPolynomial build_claim1_polynomial(const BoundParams& p) {
  const auto k = static_cast<unsigned>(2 * p.alpha() + 1);
  const mpq_class inv_alpha(1, static_cast<unsigned long>(p.alpha()));
  const RationalPolynomial shifted(std::vector<mpq_class>{-inv_alpha, 1});
  return shifted.pow(k) - RationalPolynomial::monomial(1, k) + RationalPolynomial::monomial(2, k - 1) +
         RationalPolynomial::constant(2);
}

RationalPolynomial claim1_polynomial_in_dimension(const BoundParams& p) {
  const auto k = static_cast<unsigned long>(2 * p.alpha() + 1);
  const mpq_class inv_alpha(1, static_cast<unsigned long>(p.alpha()));
  const mpq_class scale = rational_pow(mpq_class(p.alpha()), k);
  return scale * build_claim1_polynomial(p).compose_affine(inv_alpha, mpq_class(p.beta()));
}

std::vector<RationalPolynomial> sturm_chain(const RationalPolynomial& poly) {
  if (poly.is_zero()) {
    throw PreconditionViolated("Sturm chain of the zero polynomial");
  }
  const RationalPolynomial g = gcd(poly, poly.derivative());
  std::vector<RationalPolynomial> chain;
  chain.push_back(poly.divmod(g).first);
  chain.push_back(chain[0].derivative());
  while (!chain.back().is_zero()) {
    const auto& a = chain[chain.size() - 2];
    const auto& b = chain.back();
    chain.push_back(-a.divmod(b).second);
  }
  chain.pop_back();
  return chain;
}

namespace {

int count_changes(const std::vector<int>& signs) {
  int changes = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

int sign_changes_at(const std::vector<RationalPolynomial>& chain, const mpq_class& x) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& s : chain) signs.push_back(s.sign_at(x));
  return count_changes(signs);
}

int sign_changes_at_plus_infinity(const std::vector<RationalPolynomial>& chain) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& s : chain) signs.push_back(s.sign_at_plus_infinity());
  return count_changes(signs);
}

int count_roots_above(const RationalPolynomial& poly, const mpq_class& x0) {
  const auto chain = sturm_chain(poly);
  // With a square-free s0, the count at a root x0 equals the count just right
  // of it, so the difference counts roots in the open interval (x0, inf).
  return sign_changes_at(chain, x0) - sign_changes_at_plus_infinity(chain);
}

SturmCertificate make_sturm_certificate(const RationalPolynomial& poly, const mpq_class& threshold) {
  SturmCertificate c;
  c.polynomial = poly;
  c.chain = sturm_chain(poly);
  c.threshold = threshold;
  c.sign_changes_at_threshold = sign_changes_at(c.chain, threshold);
  c.sign_changes_at_infinity = sign_changes_at_plus_infinity(c.chain);
  c.sign_at_threshold = poly.sign_at(threshold);
  return c;
}

bool check_sturm_certificate(const SturmCertificate& cert) {
  const auto& ch = cert.chain;
  if (ch.size() < 1 || cert.polynomial.is_zero()) return false;
  // s0 divides the polynomial and shares its roots: poly = s0 * h with h | s0^k,
  // checked here as s0 = poly / gcd(poly, poly').
  const RationalPolynomial g = gcd(cert.polynomial, cert.polynomial.derivative());
  const auto [q0, r0] = cert.polynomial.divmod(g);
  if (!r0.is_zero() || !(q0 == ch[0])) return false;
  if (ch.size() >= 2 && !(ch[1] == ch[0].derivative())) return false;
  if (ch.size() == 1 && !ch[0].derivative().is_zero()) return false;
  for (std::size_t k = 2; k < ch.size(); ++k) {
    // s_{k-2} = q * s_{k-1} - s_k with deg s_k < deg s_{k-1}.
    if (ch[k].degree() >= ch[k - 1].degree()) return false;
    const auto [q, r] = (ch[k - 2] + ch[k]).divmod(ch[k - 1]);
    if (!r.is_zero()) return false;
  }
  // The chain must end where the remainder sequence ends.
  if (ch.size() >= 2 && !ch[ch.size() - 2].divmod(ch.back()).second.is_zero()) return false;
  return sign_changes_at(ch, cert.threshold) == cert.sign_changes_at_threshold &&
         sign_changes_at_plus_infinity(ch) == cert.sign_changes_at_infinity &&
         cert.polynomial.sign_at(cert.threshold) == cert.sign_at_threshold;
}

mpq_class cauchy_root_bound(const RationalPolynomial& poly) {
  if (poly.degree() < 1) {
    return 1;
  }
  const mpq_class lead = abs(poly.leading());
  mpq_class best = 0;
  for (int k = 0; k < poly.degree(); ++k) {
    const mpq_class r = abs(poly.coeff(static_cast<std::size_t>(k))) / lead;
    if (r > best) best = r;
  }
  return 1 + best;
}

namespace {

mpq_class threshold_for(const BoundParams& p, std::int64_t d) { return exponent_base(p, d); }

}  // namespace

DabResult certify_dab(const BoundParams& p) {
  const RationalPolynomial poly = build_claim1_polynomial(p);
  const auto chain = sturm_chain(poly);
  const int at_inf = sign_changes_at_plus_infinity(chain);
  auto roots_above = [&](std::int64_t d) { return sign_changes_at(chain, threshold_for(p, d)) - at_inf; };

  // d_hi: alpha * (bound - beta) rounded up, so beta + d_hi/alpha >= bound.
  const mpq_class bound = cauchy_root_bound(poly);
  mpq_class scaled = (bound - p.beta()) * p.alpha();
  mpz_class hi_z;
  mpz_cdiv_q(hi_z.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  std::int64_t hi = std::max<std::int64_t>(2, hi_z.get_si());
  while (roots_above(hi) != 0) {
    hi *= 2;  // unreachable for a valid Cauchy bound
  }
  std::int64_t lo = 2;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (roots_above(mid) == 0) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  DabResult out;
  out.d_ab = lo;
  out.D0 = threshold_for(p, lo);
  out.certificate = make_sturm_certificate(poly, out.D0);
  out.provenance = DabProvenance::SturmCertified;
  return out;
}

DabResult certify_dab_override(const BoundParams& p, std::int64_t d_ab) {
  if (d_ab < 2) {
    throw PreconditionViolated("d(alpha, beta) must be at least 2");
  }
  DabResult out;
  out.d_ab = d_ab;
  out.D0 = threshold_for(p, d_ab);
  out.certificate = make_sturm_certificate(build_claim1_polynomial(p), out.D0);
  out.provenance = DabProvenance::UserOverride;
  return out;
}

}  // namespace diamcert
