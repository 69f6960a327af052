#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "diamcert/bounds.hpp"
#include "diamcert/polynomial.hpp"

namespace diamcert {

/// Numerator of the sufficient condition for the inductive step, in D = beta + d/alpha:
///   P(D) = (D - 1/alpha)^(2a+1) - D^(2a+1) + 2 D^(2a) + 2.
/// Degree 2*alpha, leading coefficient -1/alpha. P(D) <= 0 at D > 0 is
/// equivalent to verify_claim1_pointwise at the matching d.
RationalPolynomial build_claim1_polynomial(const BoundParams& p);

/// alpha^(2a+1) * P((alpha*beta + d)/alpha) as a polynomial in d; integer
/// coefficients. For (2,0) this is -d^4 + 10d^3 - 10d^2 + 5d + 63.
RationalPolynomial claim1_polynomial_in_dimension(const BoundParams& p);

/// Sturm chain of the square-free part of `poly`:
///   s0 = poly / gcd(poly, poly'), s1 = s0', s_{k+1} = -rem(s_{k-1}, s_k).
std::vector<RationalPolynomial> sturm_chain(const RationalPolynomial& poly);

/// Sign changes of the chain at x, zeros skipped.
int sign_changes_at(const std::vector<RationalPolynomial>& chain, const mpq_class& x);
int sign_changes_at_plus_infinity(const std::vector<RationalPolynomial>& chain);

/// Exact number of distinct real roots of a nonzero polynomial in (x0, +inf).
int count_roots_above(const RationalPolynomial& poly, const mpq_class& x0);

/// Proof that `polynomial` has no real root above `threshold` and is <= 0 there.
struct SturmCertificate {
  RationalPolynomial polynomial;
  std::vector<RationalPolynomial> chain;
  mpq_class threshold;
  int sign_changes_at_threshold = 0;
  int sign_changes_at_infinity = 0;
  int sign_at_threshold = 0;

  int roots_above() const { return sign_changes_at_threshold - sign_changes_at_infinity; }
  bool valid() const { return roots_above() == 0 && sign_at_threshold <= 0; }
};

SturmCertificate make_sturm_certificate(const RationalPolynomial& poly, const mpq_class& threshold);

/// Independent re-check: the chain is rebuilt step by step from `polynomial`,
/// every remainder identity is verified by exact division, and the recorded
/// sign counts are recomputed. Returns false on any mismatch.
bool check_sturm_certificate(const SturmCertificate& cert);

/// Cauchy bound 1 + max |c_k / c_lead|: every real root is below it.
mpq_class cauchy_root_bound(const RationalPolynomial& poly);

enum class DabProvenance { SturmCertified, UserOverride };

struct DabResult {
  std::int64_t d_ab = 0;
  mpq_class D0;
  SturmCertificate certificate;
  DabProvenance provenance = DabProvenance::SturmCertified;
};

/// Smallest integer d >= 2 such that the claim-1 numerator has no real root in
/// (beta + d/alpha, inf). Found by binary search over [2, cauchy bound] using
/// Sturm root counts (the count is nonincreasing in d).
DabResult certify_dab(const BoundParams& p);

/// Certificate for a caller-supplied threshold; the result is returned even
/// when invalid so the caller can report it.
DabResult certify_dab_override(const BoundParams& p, std::int64_t d_ab);

}  // namespace diamcert
