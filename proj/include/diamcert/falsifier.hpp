#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include <gmpxx.h>

namespace diamcert {

/// p(d, n) = sum of coeff * d^i * n^j with exact rational coefficients.
class BivariatePolynomial {
 public:
  BivariatePolynomial() = default;

  /// Adds coeff * d^i * n^j (merging with an existing term).
  void add_term(unsigned i, unsigned j, const mpq_class& coeff);

  /// Whitespace-separated "i:j:coeff" triples, coeff an integer or "num/den",
  /// e.g. "0:1:1 1:0:-1" for n - d. Throws ParseError.
  static BivariatePolynomial parse(const std::string& text);

  /// Keyed by (i, j); zero coefficients are never stored.
  const std::map<std::pair<unsigned, unsigned>, mpq_class>& terms() const { return terms_; }
  /// Largest n-degree k, or -1 for the zero polynomial.
  int n_degree() const;
  /// g_j(d) evaluated at d, so that p(d, n) = sum_j g_j(d) n^j.
  mpq_class n_coefficient(unsigned j, const mpz_class& d) const;

  mpq_class evaluate(const mpz_class& d, const mpz_class& n) const;
  BivariatePolynomial scaled(const mpq_class& c) const;
  std::string to_string() const;

 private:
  std::map<std::pair<unsigned, unsigned>, mpq_class> terms_;
};

/// p(d-1, n-1) + 2 p(d, floor(n/2)) + 2 - p(d, n); positive means the
/// inductive step fails for p at (d, n). Requires n >= 2d >= 2.
mpq_class evaluate_inductive_gap(const BivariatePolynomial& p, std::uint64_t d, std::uint64_t n);

struct Violation {
  std::uint64_t d = 0;
  std::uint64_t n = 0;
  mpq_class gap;
  /// Probes spent, this one included.
  std::uint64_t probes = 0;
  /// Doubling sweep in which the pair was found (0 = the first probe).
  std::uint64_t sweep = 0;
};

/// Searches d = d_min * 2^k and n = max(n_min, 2d) * 2^t in sweeps: sweep s
/// probes every (k, t) with k + t = s, k ascending. Returns the first probe
/// with a positive gap, or nullopt after `budget` probes.
/// Requires budget > 0 and d_min >= 1.
std::optional<Violation> find_violation(const BivariatePolynomial& p, std::uint64_t d_min, std::uint64_t n_min,
                                        std::uint64_t budget);

}  // namespace diamcert
