#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "diamcert/certificate.hpp"
#include "diamcert/checker.hpp"
#include "diamcert/errors.hpp"
#include "diamcert/falsifier.hpp"
#include "diamcert/float_replica.hpp"
#include "diamcert/kk_table.hpp"
#include "diamcert/reports.hpp"

using namespace diamcert;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitError = 2;

std::optional<std::int64_t> int_or_auto(const std::string& s, const char* flag) {
  if (s == "auto") return std::nullopt;
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw PreconditionViolated(std::string(flag) + " expects an integer or 'auto', got '" + s + "'");
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  return f;
}

struct CertifyArgs {
  std::int64_t alpha = 0;
  std::int64_t beta = 0;
  std::string l = "auto";
  std::string dab = "auto";
  std::string mode = "rigorous";
  long max_precision = 8192;
  std::string out;
  std::size_t budget = std::size_t{256} << 20;
  std::int64_t l_start = 3;
  std::int64_t l_max = 64;
  std::int64_t b2_max_d = 0;
  std::string record = "auto";
  std::int64_t replica_length = 1000000;
  bool quiet = false;
};

int certify_float_replica(const CertifyArgs& a, const CheckerConfig& cfg) {
  const std::int64_t d_ab = cfg.d_ab ? *cfg.d_ab : certify_dab(cfg.params).d_ab;
  const std::int64_t first = cfg.l ? *cfg.l : a.l_start;
  const std::int64_t last = cfg.l ? *cfg.l : a.l_max;
  std::cout << "NON-RIGOROUS binary64 replica; nothing below is a proof.\n";
  for (std::int64_t l = first; l <= last; ++l) {
    if (!cfg.l) std::cout << "== l = " << l << " ==\n";
    std::cout << '\n';
    const auto r = run_float_replica(cfg.params, l, d_ab, a.replica_length, std::cout);
    std::cout << '\n';
    if (r.success) return kExitOk;
    if (r.out_of_memory) return kExitFailure;
  }
  return kExitFailure;
}

int run_certify(const CertifyArgs& a) {
  CheckerConfig cfg(make_params(a.alpha, a.beta));
  cfg.l = int_or_auto(a.l, "--l");
  cfg.d_ab = int_or_auto(a.dab, "--dab");
  cfg.mode = mode_from_string(a.mode);
  cfg.max_precision_bits = a.max_precision;
  cfg.memory_budget = a.budget;
  cfg.l_start = a.l_start;
  cfg.l_max = a.l_max;
  if (a.b2_max_d > 0) cfg.b2_max_d = a.b2_max_d;
  cfg.record_level = record_level_from_string(a.record);
  if (!a.quiet) cfg.transcript = &std::cout;

  if (cfg.mode == ArithmeticMode::FloatReplica) {
    return certify_float_replica(a, cfg);
  }

  std::optional<Certificate> cert;
  std::optional<FailureReport> failure;
  if (cfg.l) {
    auto r = run_checker(cfg);
    if (auto* c = std::get_if<Certificate>(&r)) {
      cert = std::move(*c);
    } else {
      failure = std::get<FailureReport>(std::move(r));
    }
  } else {
    auto r = auto_l(cfg);
    std::cout << '\n' << attempts_summary(r);
    if (r.certificate) {
      cert = std::move(r.certificate);
    } else if (!r.attempts.empty() && r.attempts.back().failure) {
      failure = r.attempts.back().failure;
    }
  }

  if (cert) {
    std::cout << "certified: Delta(d,n) <= f(d,n) for n >= d >= " << cert->l;
    if (!cert->complete()) std::cout << " (Step 2 capped at d = " << *cert->b2_max_d << ", partial)";
    std::cout << "\nl = " << cert->l << ", d_ab = " << cert->d_ab << ", comparisons: " << cert->stats.filtered
              << " filtered, " << cert->stats.mpfr << " mpfr, " << cert->stats.exact << " exact\n";
    if (!a.out.empty()) {
      auto f = open_out(a.out);
      write_certificate(f, *cert);
    }
    return kExitOk;
  }
  if (failure && !a.out.empty()) {
    auto f = open_out(a.out);
    write_failure(f, *failure);
  }
  return kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified base-case checking for diameter bounds f(d,n) = (n-d)^log2(beta + d/alpha)"};
  app.require_subcommand(1);

  CertifyArgs ca;
  auto* certify = app.add_subcommand("certify", "Run the three-step base-case check");
  certify->add_option("--alpha", ca.alpha, "alpha >= 1")->required();
  certify->add_option("--beta", ca.beta, "beta >= 0")->required();
  certify->add_option("--l", ca.l, "Starting dimension l >= 3, or 'auto'");
  certify->add_option("--dab", ca.dab, "Threshold d(alpha,beta), or 'auto' for the Sturm-certified value");
  certify->add_option("--mode", ca.mode, "rigorous | float-replica")->check(CLI::IsMember({"rigorous", "float-replica"}));
  certify->add_option("--max-precision", ca.max_precision, "Largest MPFR precision in bits");
  certify->add_option("--out", ca.out, "Write the certificate (or failure report) here");
  certify->add_option("--budget", ca.budget, "Memory budget in bytes for the exact table");
  certify->add_option("--l-start", ca.l_start, "First l tried by --l auto");
  certify->add_option("--l-max", ca.l_max, "Last l tried by --l auto");
  certify->add_option("--b2-max-d", ca.b2_max_d, "Stop Step 2 after this dimension (partial certificate)");
  certify->add_option("--record", ca.record, "Comparisons kept in the certificate: all | critical | auto")
      ->check(CLI::IsMember({"all", "critical", "auto"}));
  certify->add_option("--replica-array-length", ca.replica_length, "Array length N of the float replica");
  certify->add_flag("--quiet", ca.quiet, "Suppress the step transcript");

  std::int64_t alpha = 0, beta = 0, d = 0;
  std::uint64_t n = 0, n_max = 0, n_start = 0, n_lo = 0, n_hi = 0;
  int decimals = 6;
  std::string out;

  auto* figure = app.add_subcommand("figure", "CSV of f, tilde Delta and the Larman bound for one dimension");
  figure->add_option("--alpha", alpha)->required();
  figure->add_option("--beta", beta)->required();
  figure->add_option("--d", d)->required();
  figure->add_option("--n-max", n_max)->required();
  figure->add_option("--decimals", decimals, "Digits after the point for f");
  figure->add_option("--out", out, "Output path (default stdout)");

  auto* table = app.add_subcommand("table", "Exact tilde Delta(d,n), or a CSV range with --n-lo/--n-hi");
  table->add_option("--d", d)->required();
  auto* n_opt = table->add_option("--n", n);
  auto* lo_opt = table->add_option("--n-lo", n_lo);
  auto* hi_opt = table->add_option("--n-hi", n_hi);
  n_opt->excludes(lo_opt)->excludes(hi_opt);
  lo_opt->needs(hi_opt);
  hi_opt->needs(lo_opt);

  auto* nl = app.add_subcommand("nl", "Smallest n >= n-start with 2^(d-3) n <= f(d,n)");
  nl->add_option("--alpha", alpha)->required();
  nl->add_option("--beta", beta)->required();
  nl->add_option("--d", d)->required();
  nl->add_option("--n-start", n_start, "Defaults to d");

  auto* dab = app.add_subcommand("dab", "Sturm-certified threshold d(alpha,beta)");
  dab->add_option("--alpha", alpha)->required();
  dab->add_option("--beta", beta)->required();

  std::string poly;
  std::uint64_t d_min = 1, budget = 10000;
  auto* falsify = app.add_subcommand(
      "falsify",
      "Find (d,n) where a polynomial bound p breaks the inductive step.\n"
      "--poly takes whitespace-separated i:j:coeff triples meaning coeff * d^i * n^j;\n"
      "coeff is an integer or num/den. Example: \"0:1:1 1:0:-1\" is n - d.");
  falsify->add_option("--poly", poly)->required();
  falsify->add_option("--d-min", d_min);
  falsify->add_option("--n-min", n_start);
  falsify->add_option("--budget", budget, "Maximum number of probes");

  std::string in;
  bool recompute = false;
  auto* verify = app.add_subcommand("verify", "Re-check a certificate file");
  verify->add_option("--in", in)->required();
  verify->add_flag("--recompute", recompute, "Also recompute every recorded tilde value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*certify) return run_certify(ca);

    if (*figure) {
      const auto p = make_params(alpha, beta);
      if (out.empty()) {
        write_figure_csv(std::cout, p, d, n_max, decimals);
      } else {
        auto f = open_out(out);
        write_figure_csv(f, p, d, n_max, decimals);
      }
      return kExitOk;
    }

    if (*table) {
      auto t = DiameterTable::full_memo();
      if (*lo_opt) {
        t.dump_csv(std::cout, d, n_lo, n_hi);
      } else {
        if (!*n_opt) throw PreconditionViolated("table needs --n or --n-lo/--n-hi");
        std::cout << t.tilde_delta(d, n).get_str() << '\n';
      }
      return kExitOk;
    }

    if (*nl) {
      const auto p = make_params(alpha, beta);
      const auto r = find_n_L(p, d, n_start ? n_start : static_cast<std::uint64_t>(d));
      std::cout << "- n_L(" << r.d << ") = " << r.n_L << '\n'
                << "crossing margin: " << (r.crossing_margin_ok ? "certified" : "NOT certified") << '\n';
      return r.crossing_margin_ok ? kExitOk : kExitFailure;
    }

    if (*dab) {
      const auto p = make_params(alpha, beta);
      std::cout << dab_summary(p, certify_dab(p));
      return kExitOk;
    }

    if (*falsify) {
      const auto p = BivariatePolynomial::parse(poly);
      const auto v = find_violation(p, d_min, n_start, budget);
      if (!v) {
        std::cout << "no violation within " << budget << " probes\n";
        return kExitFailure;
      }
      std::cout << "violation at (" << v->d << "," << v->n << "): p(d-1,n-1) + 2p(d,n/2) + 2 - p(d,n) = "
                << v->gap.get_str() << " > 0 (probe " << v->probes << ", sweep " << v->sweep << ")\n";
      return kExitOk;
    }

    if (*verify) {
      std::ifstream f(in);
      if (!f) throw std::runtime_error("cannot read " + in);
      const auto c = read_certificate(f);
      VerifyOptions vo;
      vo.recompute = recompute;
      const auto r = verify_certificate(c, vo);
      std::cout << "comparisons replayed: " << r.comparisons_replayed << '\n';
      if (recompute) std::cout << "values recomputed: " << r.values_recomputed << '\n';
      for (const auto& problem : r.problems) std::cout << "problem: " << problem << '\n';
      std::cout << (r.ok ? "certificate OK" : "certificate REJECTED") << '\n';
      return r.ok ? kExitOk : kExitFailure;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
