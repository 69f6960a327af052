#include "diamcert/float_replica.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <vector>

#include "diamcert/errors.hpp"

namespace diamcert {

namespace {

class Replica {
 public:
  Replica(const BoundParams& p, std::int64_t N, std::ostream& out) : p_(p), N_(N), T_(N), U_(N), out_(out) {
    for (std::int64_t i = 0; i < N_; ++i) U_[i] = 1.0 * static_cast<double>(i);
  }

  double larman(std::int64_t d, std::int64_t n) const {
    return static_cast<double>(n) * std::pow(2.0, static_cast<double>(d - 3));
  }
  double ours(std::int64_t d, std::int64_t n) const { return float_replica_bound(p_, d, n); }

  void update(std::int64_t d) {
    T_ = U_;
    for (std::int64_t i = 0; i < N_; ++i) {
      const std::int64_t n = i + d;
      U_[i] = n < 2 * d ? T_[i] : T_[i] + 2 * U_[n / 2 - d] + 2;
    }
  }

  // False on failure, with `result` filled in.
  bool check(std::int64_t d, std::int64_t n, ReplicaResult& result) {
    const std::int64_t i = n - d;
    if (ours(d, n) < U_[i]) {
      char line[256];
      std::snprintf(line, sizeof line, "Error: %.1f [Ours] < %.1f [tilde] (%lld,%lld)\n", ours(d, n), U_[i],
                    static_cast<long long>(d), static_cast<long long>(n));
      out_ << line << "\n****** FAILURE ******\n";
      result = {false, false, d, n, ours(d, n), U_[i]};
      return false;
    }
    if (n == N_ - 1) {
      out_ << "Error: Out of Memory\n\n****** FAILURE ******\n";
      result = {false, true, d, n, ours(d, n), U_[i]};
      return false;
    }
    return true;
  }

  std::int64_t size() const { return N_; }
  std::ostream& out() { return out_; }

 private:
  const BoundParams& p_;
  std::int64_t N_;
  std::vector<double> T_, U_;
  std::ostream& out_;
};

}  // namespace

ReplicaResult run_float_replica(const BoundParams& p, std::int64_t l, std::int64_t d_ab, std::int64_t array_length,
                                std::ostream& transcript) {
  if (l < 3 || array_length <= 0) {
    throw PreconditionViolated("float replica needs l >= 3 and a positive array length");
  }
  const auto d_max = static_cast<std::int64_t>(p.inductive_offset());
  Replica r(p, array_length, transcript);
  ReplicaResult result;
  const std::int64_t N = r.size();

  std::int64_t d = 3;
  for (; d < l; ++d) r.update(d + 1);

  std::int64_t n = l;
  while (n < N && r.larman(d, n) > r.ours(d, n)) {
    if (!r.check(d, n, result)) return result;
    ++n;
  }
  transcript << "- n_L(" << d << ") = " << n << "\n(B0) OK\n";
  r.update(d + 1);
  ++d;

  while (d < d_ab) {
    n = 2 * d;
    while (r.larman(d, n) > r.ours(d, n)) {
      if (!r.check(d, n, result)) return result;
      ++n;
    }
    transcript << "- n_L(" << d << ") = " << n << '\n';
    r.update(d + 1);
    ++d;
  }
  transcript << "(B1) OK\n";

  while (d < d_max) {
    n = 2 * d;
    std::int64_t count = 0;
    while (n < d + d_max) {
      if (!r.check(d, n, result)) return result;
      ++n;
      ++count;
    }
    transcript << "- # pairs (" << d << ",n) checked = " << count << '\n';
    r.update(d + 1);
    ++d;
  }
  transcript << "(B2) OK\n\n****** SUCCESS ******\n";
  result.success = true;
  return result;
}

}  // namespace diamcert
