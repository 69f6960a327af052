#include "diamcert/reports.hpp"

#include <ostream>
#include <sstream>

#include "diamcert/compare.hpp"
#include "diamcert/errors.hpp"
#include "diamcert/kk_table.hpp"

namespace diamcert {

void write_figure_csv(std::ostream& out, const BoundParams& p, std::int64_t d, std::uint64_t n_max, int decimals) {
  if (d < 3 || n_max < static_cast<std::uint64_t>(d)) {
    throw PreconditionViolated("figure needs 3 <= d <= n_max");
  }
  const mpq_class q = exponent_base(p, d);
  auto table = DiameterTable::full_memo();
  table.ensure(d, n_max - static_cast<std::uint64_t>(d) + 1);
  out << "n,f,tilde_delta,larman\n";
  for (std::uint64_t n = static_cast<std::uint64_t>(d); n <= n_max; ++n) {
    const std::uint64_t m = n - static_cast<std::uint64_t>(d);
    std::string f;
    if (auto exact = exact_power_value(m, q)) {
      f = AdaptiveInterval::from_rational(*exact, 256).format_midpoint(decimals);
    } else {
      f = power_enclosure(m, q, 256).format_midpoint(decimals);
    }
    out << n << ',' << f << ',' << table.tilde_delta(d, n).get_str() << ',' << larman_value(d, n).value.get_str()
        << '\n';
  }
}

std::string dab_summary(const BoundParams& p, const DabResult& r) {
  std::ostringstream s;
  s << "d(" << p.alpha() << "," << p.beta() << ") = " << r.d_ab << '\n';
  s << "provenance: " << (r.provenance == DabProvenance::SturmCertified ? "sturm-certified" : "user-override") << '\n';
  s << "threshold D0 = beta + d/alpha = " << r.D0.get_str() << '\n';
  s << "numerator in d: " << claim1_polynomial_in_dimension(p).to_string("d") << '\n';
  s << "Sturm chain length: " << r.certificate.chain.size() << '\n';
  s << "sign changes at D0: " << r.certificate.sign_changes_at_threshold
    << ", at +inf: " << r.certificate.sign_changes_at_infinity << '\n';
  s << "roots above D0: " << r.certificate.roots_above() << '\n';
  s << "certificate: " << (r.certificate.valid() && check_sturm_certificate(r.certificate) ? "valid" : "INVALID")
    << '\n';
  return s.str();
}

std::string attempts_summary(const AutoLResult& r) {
  std::ostringstream s;
  for (const auto& a : r.attempts) {
    s << "l = " << a.l << ": ";
    if (a.failure) {
      s << "failed at (" << a.failure->d << "," << a.failure->n << ") with tilde = " << a.failure->tilde_delta.get_str()
        << ", f in " << a.failure->f_enclosure;
    } else if (!a.superlinear) {
      s << "skipped, f(l, n) is not superlinear and no failing pair was found";
    } else {
      s << "success";
    }
    s << '\n';
  }
  if (r.exhausted()) s << "no l in range succeeded\n";
  return s.str();
}

}  // namespace diamcert
