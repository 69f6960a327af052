#include "diamcert/falsifier.hpp"

#include <algorithm>
#include <sstream>

#include "diamcert/errors.hpp"

namespace diamcert {

namespace {

mpz_class pow_z(const mpz_class& b, unsigned e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

unsigned parse_degree(const std::string& s, const std::string& token) {
  if (s.empty() || s.size() > 4 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw ParseError("bad degree in term '" + token + "'");
  }
  return static_cast<unsigned>(std::stoul(s));
}

}  // namespace

void BivariatePolynomial::add_term(unsigned i, unsigned j, const mpq_class& coeff) {
  const auto key = std::make_pair(i, j);
  mpq_class c = coeff;
  c.canonicalize();
  auto it = terms_.find(key);
  if (it != terms_.end()) {
    c += it->second;
    terms_.erase(it);
  }
  if (c != 0) terms_.emplace(key, c);
}

BivariatePolynomial BivariatePolynomial::parse(const std::string& text) {
  BivariatePolynomial p;
  std::istringstream in(text);
  std::string token;
  bool any = false;
  while (in >> token) {
    any = true;
    const auto a = token.find(':');
    const auto b = a == std::string::npos ? a : token.find(':', a + 1);
    if (b == std::string::npos || token.find(':', b + 1) != std::string::npos) {
      throw ParseError("term '" + token + "' is not of the form i:j:coeff");
    }
    const unsigned i = parse_degree(token.substr(0, a), token);
    const unsigned j = parse_degree(token.substr(a + 1, b - a - 1), token);
    std::string cs = token.substr(b + 1);
    if (!cs.empty() && cs[0] == '+') cs.erase(0, 1);
    mpq_class c;
    const bool ok = !cs.empty() && cs.find_first_not_of("-0123456789/") == std::string::npos && c.set_str(cs, 10) == 0 &&
                    c.get_den() != 0;
    if (!ok) throw ParseError("bad coefficient in term '" + token + "'");
    p.add_term(i, j, c);
  }
  if (!any) throw ParseError("empty polynomial");
  return p;
}

int BivariatePolynomial::n_degree() const {
  int k = -1;
  for (const auto& [key, c] : terms_) k = std::max(k, static_cast<int>(key.second));
  return k;
}

mpq_class BivariatePolynomial::n_coefficient(unsigned j, const mpz_class& d) const {
  mpq_class g = 0;
  for (const auto& [key, c] : terms_) {
    if (key.second == j) g += c * pow_z(d, key.first);
  }
  return g;
}

mpq_class BivariatePolynomial::evaluate(const mpz_class& d, const mpz_class& n) const {
  mpq_class v = 0;
  for (const auto& [key, c] : terms_) v += c * pow_z(d, key.first) * pow_z(n, key.second);
  return v;
}

BivariatePolynomial BivariatePolynomial::scaled(const mpq_class& c) const {
  BivariatePolynomial out;
  for (const auto& [key, v] : terms_) out.add_term(key.first, key.second, v * c);
  return out;
}

std::string BivariatePolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [key, c] : terms_) {
    if (!s.empty()) s += ' ';
    s += std::to_string(key.first) + ":" + std::to_string(key.second) + ":" + c.get_str();
  }
  return s;
}

mpq_class evaluate_inductive_gap(const BivariatePolynomial& p, std::uint64_t d, std::uint64_t n) {
  if (d < 1 || n < 2 * d) {
    throw PreconditionViolated("inductive gap needs n >= 2d >= 2");
  }
  const mpz_class zd(std::to_string(d)), zn(std::to_string(n));
  return p.evaluate(zd - 1, zn - 1) + 2 * p.evaluate(zd, zn / 2) + 2 - p.evaluate(zd, zn);
}

std::optional<Violation> find_violation(const BivariatePolynomial& p, std::uint64_t d_min, std::uint64_t n_min,
                                        std::uint64_t budget) {
  if (budget == 0 || d_min < 1) {
    throw PreconditionViolated("find_violation needs budget > 0 and d_min >= 1");
  }
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 62;
  std::uint64_t probes = 0;
  for (std::uint64_t sweep = 0;; ++sweep) {
    bool progressed = false;
    for (std::uint64_t k = 0; k <= sweep; ++k) {
      if (k >= 62 || d_min > (kLimit >> k)) break;
      const std::uint64_t d = d_min << k;
      const std::uint64_t n0 = std::max(n_min, 2 * d);
      const std::uint64_t t = sweep - k;
      if (t >= 62 || n0 > (kLimit >> t)) continue;
      const std::uint64_t n = n0 << t;
      progressed = true;
      ++probes;
      mpq_class gap = evaluate_inductive_gap(p, d, n);
      if (gap > 0) return Violation{d, n, gap, probes, sweep};
      if (probes >= budget) return std::nullopt;
    }
    if (!progressed) return std::nullopt;
  }
}

}  // namespace diamcert
