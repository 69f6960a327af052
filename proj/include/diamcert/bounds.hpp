#pragma once

#include <cstdint>

#include <gmpxx.h>

namespace diamcert {

/// Member (alpha, beta) of S selecting the bound f_{a,b}(d,n) = (n-d)^(log2(beta + d/alpha)).
/// Only constructible through make_params, so every instance satisfies alpha >= 1, beta >= 0.
class BoundParams {
 public:
  std::int64_t alpha() const { return alpha_; }
  std::int64_t beta() const { return beta_; }

  /// 2^(2*alpha+1): the offset beyond which the inductive step applies.
  /// Throws InvalidParams when it does not fit in 62 bits.
  std::uint64_t inductive_offset() const;

  friend bool operator==(const BoundParams&, const BoundParams&) = default;

 private:
  BoundParams(std::int64_t alpha, std::int64_t beta) : alpha_(alpha), beta_(beta) {}
  friend BoundParams make_params(std::int64_t alpha, std::int64_t beta);

  std::int64_t alpha_;
  std::int64_t beta_;
};

/// Throws InvalidParams when alpha <= 0 or beta < 0.
BoundParams make_params(std::int64_t alpha, std::int64_t beta);

/// The base q(d) = beta + d/alpha = (alpha*beta + d)/alpha, in lowest terms.
mpq_class exponent_base(const BoundParams& p, std::int64_t d);

/// Assumption 1 at dimension l: beta + l/alpha > 2, tested as alpha*beta + l > 2*alpha.
bool check_superlinearity(const BoundParams& p, std::int64_t l);

/// The real number m^(log2 q), kept symbolic. m = 0 means 0 and m = 1 means 1.
struct BoundValue {
  std::uint64_t m = 0;
  mpq_class q;
};

/// f_{a,b}(d, n) in symbolic form.
BoundValue bound_value(const BoundParams& p, std::int64_t d, std::uint64_t n);

/// Generalized Larman bound 2^(d-3) * n.
struct LarmanValue {
  std::int64_t d = 0;
  std::uint64_t n = 0;
  mpz_class value;
};

/// Requires d >= 3 and n >= d (PreconditionViolated otherwise).
LarmanValue larman_value(std::int64_t d, std::uint64_t n);

/// NON-RIGOROUS binary64 evaluation of f, computed exactly as the original C
/// checker does: pow(n-d, log(d/alpha + beta)/log(2)). Used only to replay
/// historical printouts; never consulted by a certifying run.
double float_replica_bound(const BoundParams& p, std::int64_t d, std::int64_t n);

}  // namespace diamcert
