#include "diamcert/bounds.hpp"

#include <cmath>
#include <string>

#include "diamcert/errors.hpp"

namespace diamcert {

BoundParams make_params(std::int64_t alpha, std::int64_t beta) {
  if (alpha <= 0) {
    throw InvalidParams("alpha must be positive, got " + std::to_string(alpha));
  }
  if (beta < 0) {
    throw InvalidParams("beta must be nonnegative, got " + std::to_string(beta));
  }
  return BoundParams(alpha, beta);
}

std::uint64_t BoundParams::inductive_offset() const {
  if (alpha_ > 30) {
    throw InvalidParams("2^(2*alpha+1) does not fit for alpha = " + std::to_string(alpha_));
  }
  return std::uint64_t{1} << (2 * alpha_ + 1);
}

mpq_class exponent_base(const BoundParams& p, std::int64_t d) {
  mpz_class num = mpz_class(static_cast<long>(p.alpha())) * static_cast<long>(p.beta());
  num += static_cast<long>(d);
  mpq_class q(num, mpz_class(static_cast<long>(p.alpha())));
  q.canonicalize();
  return q;
}

bool check_superlinearity(const BoundParams& p, std::int64_t l) {
  mpz_class lhs = mpz_class(static_cast<long>(p.alpha())) * static_cast<long>(p.beta());
  lhs += static_cast<long>(l);
  return lhs > mpz_class(static_cast<long>(p.alpha())) * 2;
}

BoundValue bound_value(const BoundParams& p, std::int64_t d, std::uint64_t n) {
  if (n < static_cast<std::uint64_t>(d)) {
    throw PreconditionViolated("bound_value needs n >= d");
  }
  return BoundValue{n - static_cast<std::uint64_t>(d), exponent_base(p, d)};
}

LarmanValue larman_value(std::int64_t d, std::uint64_t n) {
  if (d < 3 || n < static_cast<std::uint64_t>(d)) {
    throw PreconditionViolated("larman_value needs d >= 3 and n >= d");
  }
  LarmanValue out{d, n, mpz_class(static_cast<unsigned long>(n))};
  mpz_mul_2exp(out.value.get_mpz_t(), out.value.get_mpz_t(), static_cast<mp_bitcnt_t>(d - 3));
  return out;
}

double float_replica_bound(const BoundParams& p, std::int64_t d, std::int64_t n) {
  const double a = static_cast<double>(p.alpha());
  const double b = static_cast<double>(p.beta());
  return std::pow(1.0 * static_cast<double>(n - d), std::log(1.0 * static_cast<double>(d) / a + b) / std::log(2));
}

}  // namespace diamcert
