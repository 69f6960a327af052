#include "diamcert/checker.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>

#include "diamcert/certificate.hpp"
#include "diamcert/errors.hpp"

namespace diamcert {

namespace {

constexpr mpfr_prec_t kReportPrecision = 256;

std::string enclosure_text(std::uint64_t m, const mpq_class& q) {
  if (auto exact = exact_power_value(m, q)) {
    return AdaptiveInterval::from_rational(*exact, kReportPrecision).format_outward(2);
  }
  return power_enclosure(m, q, kReportPrecision).format_outward(2);
}

struct ScanResult {
  bool failed = false;
  std::uint64_t failed_at = 0;
  std::uint64_t n_L = 0;
};

class Run {
 public:
  Run(const CheckerConfig& cfg, std::int64_t l, const DabResult& dab, DiameterTable& memo)
      : cfg_(cfg), p_(cfg.params), l_(l), dab_(dab), memo_(memo) {
    opts_.max_precision = cfg.max_precision_bits;
    opts_.start_precision = std::min<mpfr_prec_t>(opts_.start_precision, opts_.max_precision);
  }

  RunResult execute();

 private:
  void say(const std::string& line) {
    if (cfg_.transcript) *cfg_.transcript << line << '\n';
  }

  std::span<const mp_limb_t> memo_value(std::int64_t d, std::uint64_t n);
  ScanResult scan(Step step, std::int64_t d, std::uint64_t n_start, bool superlinear);
  bool step2(std::int64_t d_from, std::int64_t d_to);
  FailureReport failure(FailureKind kind, Step step, std::int64_t d, std::uint64_t n, const mpz_class& tilde);
  void keep(ComparisonRecord r) { comparisons_.push_back(std::move(r)); }

  const CheckerConfig& cfg_;
  const BoundParams& p_;
  std::int64_t l_;
  const DabResult& dab_;
  DiameterTable& memo_;
  CompareOptions opts_;
  CompareStats stats_;
  bool record_all_ = true;
  std::vector<NLRecord> nl_records_;
  std::vector<CheckRecord> check_records_;
  std::vector<ComparisonRecord> comparisons_;
  std::optional<FailureReport> failure_;
  std::uint64_t step2_bytes_ = 0;
};

std::span<const mp_limb_t> Run::memo_value(std::int64_t d, std::uint64_t n) {
  const std::size_t i = n - static_cast<std::uint64_t>(d);
  const std::size_t have = memo_.materialized_length(d);
  if (i >= have) {
    const std::size_t grown = std::max({i + 1, 2 * have, std::size_t{1024}});
    try {
      memo_.ensure(d, grown);
    } catch (const BudgetExceeded&) {
      memo_.ensure(d, i + 1);
    }
  }
  return memo_.row(d).limbs(i);
}

FailureReport Run::failure(FailureKind kind, Step step, std::int64_t d, std::uint64_t n, const mpz_class& tilde) {
  FailureReport r;
  r.alpha = p_.alpha();
  r.beta = p_.beta();
  r.l = l_;
  r.d_ab = dab_.d_ab;
  r.kind = kind;
  r.step = step;
  r.d = d;
  r.n = n;
  r.tilde_delta = tilde;
  r.f_enclosure = enclosure_text(n - static_cast<std::uint64_t>(d), exponent_base(p_, d));
  r.superlinear = check_superlinearity(p_, l_);
  r.nl_records = nl_records_;
  r.check_records = check_records_;
  return r;
}

ScanResult Run::scan(Step step, std::int64_t d, std::uint64_t n_start, bool superlinear) {
  const mpq_class q = exponent_base(p_, d);
  const PowerComparator cmp(q, opts_);
  const auto ud = static_cast<std::uint64_t>(d);
  CheckRecord rec{step, d, n_start, n_start, 0, true, 0};
  std::optional<ComparisonRecord> tightest;
  double tightest_margin = 0;
  std::optional<ComparisonRecord> last_larman;
  ScanResult out;

  for (std::uint64_t n = n_start;; ++n) {
    const std::uint64_t m = n - ud;
    if (superlinear) {
      const mpz_class larman = larman_value(d, n).value;
      const auto lo = cmp.compare(larman, m, &stats_);
      ComparisonRecord lr{ComparisonKind::LarmanVsBound, d, n, larman, m, q, lo};
      if (at_most(lo)) {
        if (record_all_) {
          keep(std::move(lr));
        } else {
          if (last_larman) keep(*last_larman);
          keep(std::move(lr));
        }
        out.n_L = n;
        break;
      }
      if (record_all_) {
        keep(std::move(lr));
      } else {
        last_larman = std::move(lr);
      }
    } else if (n - n_start >= cfg_.witness_scan_limit) {
      throw AssumptionViolated("f(" + std::to_string(d) + ", n) is not superlinear in n and no failing pair exists for n < " +
                               std::to_string(n));
    }
    const auto v = memo_value(d, n);
    double margin = 0;
    const auto o = cmp.compare(v, m, &stats_, &margin);
    ++rec.pairs_checked;
    if (!at_most(o)) {
      rec.passed = false;
      rec.failed_at = n;
      rec.n_hi = n;
      check_records_.push_back(rec);
      out.failed = true;
      out.failed_at = n;
      return out;
    }
    if (record_all_) {
      keep({ComparisonKind::TildeVsBound, d, n, to_mpz(v), m, q, o});
    } else if (!tightest || margin < tightest_margin) {
      tightest = ComparisonRecord{ComparisonKind::TildeVsBound, d, n, to_mpz(v), m, q, o};
      tightest_margin = margin;
    }
  }
  rec.n_hi = out.n_L - 1;
  check_records_.push_back(rec);
  if (tightest) keep(std::move(*tightest));
  return out;
}

bool Run::step2(std::int64_t d_from, std::int64_t d_to) {
  const std::uint64_t cap = p_.inductive_offset();
  if (2 * cap * sizeof(mp_limb_t) > cfg_.memory_budget) {
    throw BudgetExceeded("Step 2 rows of " + std::to_string(cap) + " entries exceed the memory budget");
  }
  auto table = DiameterTable::rolling(cap);
  const auto log2_m = log2_table(cap);
  while (table.current_dim() < d_from) table.advance_dimension();
  for (std::int64_t d = d_from; d <= d_to; ++d) {
    const mpq_class q = exponent_base(p_, d);
    const PowerComparator cmp(q, opts_);
    const LimbRow& row = table.row(d);
    const auto ud = static_cast<std::uint64_t>(d);
    CheckRecord rec{Step::B2, d, 2 * ud, ud + cap - 1, 0, true, 0};
    std::size_t tightest = 0;
    double tightest_margin = 0;
    ComparisonOutcome tightest_outcome = ComparisonOutcome::ProvenLess;
    for (std::uint64_t i = ud; i < cap; ++i) {
      double margin = 0;
      const auto o = cmp.compare(row.limbs(i), i, &stats_, &margin, &log2_m[i]);
      ++rec.pairs_checked;
      if (!at_most(o)) {
        rec.passed = false;
        rec.failed_at = ud + i;
        rec.n_hi = ud + i;
        check_records_.push_back(rec);
        failure_ = failure(FailureKind::BoundExceeded, Step::B2, d, ud + i, row.value(i));
        return false;
      }
      if (record_all_) {
        keep({ComparisonKind::TildeVsBound, d, ud + i, row.value(i), i, q, o});
      } else if (i == ud || margin < tightest_margin) {
        tightest = i;
        tightest_margin = margin;
        tightest_outcome = o;
      }
    }
    if (!record_all_ && rec.pairs_checked > 0) {
      keep({ComparisonKind::TildeVsBound, d, ud + tightest, row.value(tightest), tightest, q, tightest_outcome});
    }
    check_records_.push_back(rec);
    say("- # pairs (" + std::to_string(d) + ",n) checked = " + std::to_string(rec.pairs_checked));
    step2_bytes_ = std::max<std::uint64_t>(step2_bytes_, table.bytes());
    if (d < d_to) table.advance_dimension();
  }
  return true;
}

RunResult Run::execute() {
  const auto started = std::chrono::steady_clock::now();
  if (l_ < 3) {
    throw PreconditionViolated("l must be at least 3");
  }
  const bool superlinear = check_superlinearity(p_, l_);
  const std::int64_t d_max = static_cast<std::int64_t>(p_.inductive_offset());
  const std::int64_t b2_from = std::max(l_ + 1, dab_.d_ab);
  std::int64_t b2_to = d_max - 1;
  if (cfg_.b2_max_d) b2_to = std::min(b2_to, *cfg_.b2_max_d);

  std::uint64_t b2_pairs = 0;
  for (std::int64_t d = b2_from; d <= b2_to; ++d) b2_pairs += static_cast<std::uint64_t>(d_max - d);
  RecordLevel level = cfg_.record_level;
  if (level == RecordLevel::Auto) {
    level = b2_pairs <= cfg_.auto_record_limit ? RecordLevel::All : RecordLevel::Critical;
  }
  record_all_ = level == RecordLevel::All;

  auto fail_with = [&](FailureReport r) -> RunResult {
    say(r.error_line());
    say("");
    say("****** FAILURE ******");
    return r;
  };

  // Step 0
  {
    const auto s = scan(Step::B0, l_, static_cast<std::uint64_t>(l_), superlinear);
    if (s.failed) {
      return fail_with(failure(FailureKind::BoundExceeded, Step::B0, l_, s.failed_at,
                               to_mpz(memo_value(l_, s.failed_at))));
    }
    const bool ok = crossing_margin_holds(p_, l_, s.n_L, opts_);
    nl_records_.push_back({l_, s.n_L, ok});
    say("- n_L(" + std::to_string(l_) + ") = " + std::to_string(s.n_L));
    if (!ok) return fail_with(failure(FailureKind::CrossingMargin, Step::B0, l_, s.n_L, mpz_class(0)));
    say("(B0) OK");
  }

  // Step 1
  for (std::int64_t d = l_ + 1; d < dab_.d_ab; ++d) {
    const auto s = scan(Step::B1, d, 2 * static_cast<std::uint64_t>(d), true);
    if (s.failed) {
      return fail_with(failure(FailureKind::BoundExceeded, Step::B1, d, s.failed_at,
                               to_mpz(memo_value(d, s.failed_at))));
    }
    const bool ok = crossing_margin_holds(p_, d, s.n_L, opts_);
    nl_records_.push_back({d, s.n_L, ok});
    say("- n_L(" + std::to_string(d) + ") = " + std::to_string(s.n_L));
    if (!ok) return fail_with(failure(FailureKind::CrossingMargin, Step::B1, d, s.n_L, mpz_class(0)));
  }
  say("(B1) OK");

  // Step 2
  if (b2_from <= b2_to && !step2(b2_from, b2_to)) {
    return fail_with(*failure_);
  }
  if (cfg_.b2_max_d && b2_to < d_max - 1) {
    say("- B2 capped at d = " + std::to_string(b2_to));
  }
  say("(B2) OK");
  say("");
  say("****** SUCCESS ******");

  Certificate c;
  c.tool_version = tool_version();
  c.alpha = p_.alpha();
  c.beta = p_.beta();
  c.l = l_;
  c.d_ab = dab_.d_ab;
  c.dab_provenance = dab_.provenance;
  c.sturm = dab_.certificate;
  c.superlinear = superlinear;
  c.mode = ArithmeticMode::Rigorous;
  c.max_precision_bits = cfg_.max_precision_bits;
  c.max_precision_used = stats_.max_precision_used;
  if (cfg_.b2_max_d && b2_to < d_max - 1) c.b2_max_d = b2_to;
  c.record_level = level;
  c.nl_records = std::move(nl_records_);
  c.check_records = std::move(check_records_);
  c.comparisons = std::move(comparisons_);
  c.stats = stats_;
  c.step2_table_bytes = step2_bytes_;
  c.duration_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return c;
}

}  // namespace

bool crossing_margin_holds(const BoundParams& p, std::int64_t d, std::uint64_t n, const CompareOptions& opts) {
  const mpq_class q = exponent_base(p, d);
  const auto m = n - static_cast<std::uint64_t>(d);
  mpz_class step;
  mpz_ui_pow_ui(step.get_mpz_t(), 2, static_cast<unsigned long>(d - 3));
  const auto a = exact_power_value(m, q);
  const auto b = exact_power_value(m + 1, q);
  if (a && b) {
    return *b - *a >= step;
  }
  for (mpfr_prec_t prec = opts.start_precision; prec <= opts.max_precision; prec *= 2) {
    const auto diff = power_enclosure(m + 1, q, prec) - power_enclosure(m, q, prec) -
                      AdaptiveInterval::from_integer(step, prec);
    if (diff.certainly_positive()) return true;
    if (diff.certainly_negative()) return false;
  }
  throw Undecidable("crossing margin undecided at (d, n) = (" + std::to_string(d) + ", " + std::to_string(n) + ")");
}

NLRecord find_n_L(const BoundParams& p, std::int64_t d, std::uint64_t n_start, const CompareOptions& opts,
                  std::uint64_t n_limit) {
  if (d < 3 || n_start < static_cast<std::uint64_t>(d)) {
    throw PreconditionViolated("find_n_L needs d >= 3 and n_start >= d");
  }
  if (!check_superlinearity(p, d)) {
    throw PreconditionViolated("f(" + std::to_string(d) + ", n) is not superlinear in n");
  }
  const PowerComparator cmp(exponent_base(p, d), opts);
  for (std::uint64_t n = n_start; n <= n_limit; ++n) {
    if (at_most(cmp.compare(larman_value(d, n).value, n - static_cast<std::uint64_t>(d)))) {
      return {d, n, crossing_margin_holds(p, d, n, opts)};
    }
  }
  throw BudgetExceeded("n_L(" + std::to_string(d) + ") exceeds " + std::to_string(n_limit));
}

DabResult resolve_dab(const CheckerConfig& cfg) {
  if (!cfg.d_ab) {
    return certify_dab(cfg.params);
  }
  if (*cfg.d_ab < 2 || !verify_claim1_pointwise(cfg.params, *cfg.d_ab)) {
    throw PreconditionViolated("d_ab = " + std::to_string(*cfg.d_ab) + " fails the claim-1 inequality");
  }
  auto r = certify_dab_override(cfg.params, *cfg.d_ab);
  if (!r.certificate.valid()) {
    throw PreconditionViolated("d_ab = " + std::to_string(*cfg.d_ab) +
                               " leaves a root of the claim-1 polynomial above the threshold");
  }
  return r;
}

RunResult run_checker(const CheckerConfig& cfg, std::int64_t l, const DabResult& dab, DiameterTable& memo) {
  if (cfg.mode != ArithmeticMode::Rigorous) {
    throw PreconditionViolated("run_checker is the rigorous path; use run_float_replica");
  }
  return Run(cfg, l, dab, memo).execute();
}

RunResult run_checker(const CheckerConfig& cfg) {
  if (!cfg.l) {
    throw PreconditionViolated("run_checker needs an explicit l; use auto_l");
  }
  const DabResult dab = resolve_dab(cfg);
  auto memo = DiameterTable::full_memo(cfg.memory_budget);
  return run_checker(cfg, *cfg.l, dab, memo);
}

AutoLResult auto_l(const CheckerConfig& cfg) {
  if (cfg.l_start < 3 || cfg.l_start > cfg.l_max) {
    throw PreconditionViolated("auto_l needs 3 <= l_start <= l_max");
  }
  const DabResult dab = resolve_dab(cfg);
  auto memo = DiameterTable::full_memo(cfg.memory_budget);
  AutoLResult out;
  for (std::int64_t l = cfg.l_start; l <= cfg.l_max; ++l) {
    AttemptRecord a;
    a.l = l;
    a.superlinear = check_superlinearity(cfg.params, l);
    if (cfg.transcript) *cfg.transcript << "== l = " << l << " ==\n";
    try {
      auto r = run_checker(cfg, l, dab, memo);
      if (auto* c = std::get_if<Certificate>(&r)) {
        out.attempts.push_back(a);
        out.certificate = std::move(*c);
        return out;
      }
      a.failure = std::get<FailureReport>(std::move(r));
    } catch (const AssumptionViolated& e) {
      if (cfg.transcript) *cfg.transcript << "Skipped: " << e.what() << '\n';
    }
    out.attempts.push_back(std::move(a));
  }
  return out;
}

}  // namespace diamcert
