#include "doctest.h"

#include <sstream>

#include "diamcert/certificate.hpp"
#include "diamcert/checker.hpp"
#include "diamcert/errors.hpp"
#include "diamcert/float_replica.hpp"

using namespace diamcert;

namespace {

CheckerConfig config(std::int64_t a, std::int64_t b, std::optional<std::int64_t> l, std::optional<std::int64_t> dab) {
  CheckerConfig cfg(make_params(a, b));
  cfg.l = l;
  cfg.d_ab = dab;
  return cfg;
}

// Plain MPFR-ladder comparison without the float filter.
ComparisonOutcome slow_compare(const mpz_class& V, const BoundParams& p, std::int64_t d, std::uint64_t n) {
  CompareOptions o;
  o.use_float_filter = false;
  return compare_int_vs_power(V, n - static_cast<std::uint64_t>(d), exponent_base(p, d), o);
}

std::string serialized(Certificate c) {
  c.duration_seconds = 0;
  std::ostringstream os;
  write_certificate(os, c);
  return os.str();
}

}  // namespace

TEST_CASE("n_L values") {
  const auto p = make_params(2, 0);
  CHECK(find_n_L(p, 7, 7).n_L == 46);
  CHECK(find_n_L(p, 8, 16).n_L == 47);
  CHECK(find_n_L(p, 9, 18).n_L == 51);
  CHECK(find_n_L(p, 7, 7).crossing_margin_ok);
  const auto q = make_params(4, 0);
  const auto r = find_n_L(q, 37, 37);
  CHECK(r.n_L == 42946);
  CHECK(r.crossing_margin_ok);
}

TEST_CASE("n_L is the first crossing under an independent comparison") {
  for (auto [a, b, d] : {std::tuple{2, 0, 7}, std::tuple{2, 0, 9}, std::tuple{4, 0, 20}, std::tuple{8, 16, 5}}) {
    const auto p = make_params(a, b);
    const auto r = find_n_L(p, d, static_cast<std::uint64_t>(d));
    CHECK(at_most(slow_compare(larman_value(d, r.n_L).value, p, d, r.n_L)));
    if (r.n_L > static_cast<std::uint64_t>(d)) {
      CHECK_FALSE(at_most(slow_compare(larman_value(d, r.n_L - 1).value, p, d, r.n_L - 1)));
    }
    // Convexity margin implies the Larman bound stays below f beyond n_L.
    for (std::uint64_t n = r.n_L; n < r.n_L + 200; ++n) {
      CHECK(at_most(slow_compare(larman_value(d, n).value, p, d, n)));
    }
  }
}

TEST_CASE("find_n_L preconditions and budget") {
  CHECK_THROWS_AS(find_n_L(make_params(2, 0), 4, 4), PreconditionViolated);
  CHECK_THROWS_AS(find_n_L(make_params(2, 0), 7, 6), PreconditionViolated);
  CHECK_THROWS_AS(find_n_L(make_params(2, 0), 7, 7, {}, 40), BudgetExceeded);
}

TEST_CASE("(2,0) with l = 7 succeeds with the expected records") {
  auto cfg = config(2, 0, 7, 10);
  std::ostringstream transcript;
  cfg.transcript = &transcript;
  const auto r = run_checker(cfg);
  REQUIRE(std::holds_alternative<Certificate>(r));
  const auto& c = std::get<Certificate>(r);
  REQUIRE(c.nl_records.size() == 3);
  CHECK(c.nl_records[0].n_L == 46);
  CHECK(c.nl_records[1].n_L == 47);
  CHECK(c.nl_records[2].n_L == 51);
  int b2 = 0;
  for (const auto& rec : c.check_records) {
    CHECK(rec.passed);
    CHECK(rec.pairs_checked == rec.n_hi - rec.n_lo + 1);
    if (rec.step == Step::B2) {
      CHECK(rec.pairs_checked == static_cast<std::uint64_t>(32 - rec.d));
      CHECK(rec.d == 10 + b2);
      ++b2;
    }
  }
  CHECK(b2 == 22);
  const std::string t = transcript.str();
  CHECK(t.find("- n_L(7) = 46\n(B0) OK\n- n_L(8) = 47\n- n_L(9) = 51\n(B1) OK\n- # pairs (10,n) checked = 22\n") == 0);
  CHECK(t.find("- # pairs (31,n) checked = 1\n(B2) OK\n\n****** SUCCESS ******\n") != std::string::npos);
}

TEST_CASE("(2,0) with l = 6 fails at (6,24)") {
  auto cfg = config(2, 0, 6, 10);
  std::ostringstream transcript;
  cfg.transcript = &transcript;
  const auto r = run_checker(cfg);
  REQUIRE(std::holds_alternative<FailureReport>(r));
  const auto& f = std::get<FailureReport>(r);
  CHECK(f.d == 6);
  CHECK(f.n == 24);
  CHECK(f.tilde_delta == 98);
  CHECK(f.step == Step::B0);
  CHECK(f.f_enclosure == "[97.62, 97.63]");
  CHECK(f.error_line() == "Error: f ∈ [97.62, 97.63] [Ours] < 98 [tilde] (6,24)");
  CHECK(transcript.str().find("****** FAILURE ******") != std::string::npos);
  // Minimality: every earlier pair of the scan passes.
  const auto p = make_params(2, 0);
  auto table = DiameterTable::full_memo();
  for (std::uint64_t n = 6; n < 24; ++n) {
    CHECK(at_most(slow_compare(table.tilde_delta(6, n), p, 6, n)));
  }
}

TEST_CASE("(4,0) with l = 36 fails at (36,6928) with the oracle value") {
  const auto r = run_checker(config(4, 0, 36, 36));
  REQUIRE(std::holds_alternative<FailureReport>(r));
  const auto& f = std::get<FailureReport>(r);
  CHECK(f.d == 36);
  CHECK(f.n == 6928);
  CHECK(f.tilde_delta == oracle_tilde(36, 6928));
  CHECK(f.tilde_delta == mpz_class("1469922992914"));
  CHECK(f.f_enclosure == "[1469828390203.30, 1469828390203.31]");
}

TEST_CASE("(4,0) with l = 37 and d_ab = 36 skips Step 1") {
  auto cfg = config(4, 0, 37, 36);
  cfg.record_level = RecordLevel::Critical;
  const auto r = run_checker(cfg);
  REQUIRE(std::holds_alternative<Certificate>(r));
  const auto& c = std::get<Certificate>(r);
  REQUIRE(c.nl_records.size() == 1);
  CHECK(c.nl_records[0].n_L == 42946);
  std::int64_t expect_d = 38;
  for (const auto& rec : c.check_records) {
    CHECK(rec.step != Step::B1);
    if (rec.step != Step::B2) continue;
    CHECK(rec.d == expect_d);
    CHECK(rec.pairs_checked == static_cast<std::uint64_t>(512 - rec.d));
    ++expect_d;
  }
  CHECK(expect_d == 512);
}

TEST_CASE("auto_l for (2,0) from l = 4") {
  auto cfg = config(2, 0, std::nullopt, std::nullopt);
  cfg.l_start = 4;
  const auto r = auto_l(cfg);
  REQUIRE(r.certificate);
  CHECK(r.certificate->l == 7);
  CHECK(r.certificate->d_ab == 10);
  REQUIRE(r.attempts.size() == 4);
  const std::tuple<std::int64_t, std::uint64_t, long> expect[] = {{4, 8, 6}, {5, 10, 9}, {6, 24, 98}};
  for (int k = 0; k < 3; ++k) {
    REQUIRE(r.attempts[k].failure);
    CHECK(r.attempts[k].failure->d == std::get<0>(expect[k]));
    CHECK(r.attempts[k].failure->n == std::get<1>(expect[k]));
    CHECK(r.attempts[k].failure->tilde_delta == std::get<2>(expect[k]));
  }
  CHECK_FALSE(r.attempts[0].superlinear);
  CHECK(r.attempts[1].superlinear);
}

TEST_CASE("auto_l exhaustion and preconditions") {
  auto cfg = config(2, 0, std::nullopt, std::nullopt);
  cfg.l_start = 3;
  cfg.l_max = 3;
  const auto r = auto_l(cfg);
  CHECK(r.exhausted());
  REQUIRE(r.attempts.size() == 1);
  CHECK_FALSE(r.attempts[0].superlinear);
  cfg.l_start = 2;
  CHECK_THROWS_AS(auto_l(cfg), PreconditionViolated);
  cfg.l_start = 5;
  cfg.l_max = 4;
  CHECK_THROWS_AS(auto_l(cfg), PreconditionViolated);
}

TEST_CASE("(8,16): certified threshold, l = 3 and l = 4 both pass on a capped Step 2") {
  auto cfg = config(8, 16, std::nullopt, std::nullopt);
  cfg.b2_max_d = 12;
  const auto r = auto_l(cfg);
  REQUIRE(r.certificate);
  CHECK(r.certificate->l == 3);
  CHECK(r.certificate->d_ab <= 8);
  CHECK_FALSE(r.certificate->complete());

  cfg.l = 4;
  const auto r4 = run_checker(cfg);
  REQUIRE(std::holds_alternative<Certificate>(r4));
  const auto& c = std::get<Certificate>(r4);
  CHECK(c.nl_records.size() == 1);
  CHECK(c.check_records.back().d == 12);
  CHECK(c.check_records.back().pairs_checked == 131072 - 12);
}

TEST_CASE("threshold overrides are validated") {
  CHECK_THROWS_AS(run_checker(config(2, 0, 7, 9)), PreconditionViolated);
  CHECK_THROWS_AS(run_checker(config(2, 0, 7, 1)), PreconditionViolated);
  CHECK(std::holds_alternative<Certificate>(run_checker(config(2, 0, 7, 12))));
  CHECK_THROWS_AS(run_checker(config(2, 0, 2, 10)), PreconditionViolated);
  CHECK_THROWS_AS(run_checker(config(2, 0, std::nullopt, 10)), PreconditionViolated);
}

TEST_CASE("non-superlinear l without a witness is an assumption violation") {
  auto cfg = config(2, 0, 4, 10);
  cfg.witness_scan_limit = 1;
  CHECK_THROWS_AS(run_checker(cfg), AssumptionViolated);
}

TEST_CASE("memory budget is enforced") {
  auto cfg = config(4, 0, 37, 36);
  cfg.memory_budget = 1 << 16;
  CHECK_THROWS_AS(run_checker(cfg), BudgetExceeded);
}

TEST_CASE("replay: rerunning with recorded l and d_ab gives an identical certificate") {
  auto cfg = config(2, 0, std::nullopt, std::nullopt);
  const auto first = auto_l(cfg);
  REQUIRE(first.certificate);
  auto again = config(2, 0, first.certificate->l, std::nullopt);
  const auto second = run_checker(again);
  REQUIRE(std::holds_alternative<Certificate>(second));
  CHECK(serialized(*first.certificate) == serialized(std::get<Certificate>(second)));
  for (const auto& nl : first.certificate->nl_records) {
    const std::uint64_t start = nl.d == first.certificate->l ? static_cast<std::uint64_t>(nl.d) : 2 * static_cast<std::uint64_t>(nl.d);
    CHECK(find_n_L(make_params(2, 0), nl.d, start).n_L == nl.n_L);
  }
}

TEST_CASE("float replica reproduces the historical printouts") {
  std::ostringstream a;
  const auto r6 = run_float_replica(make_params(2, 0), 6, 10, 1000000, a);
  CHECK_FALSE(r6.success);
  CHECK(a.str() == "Error: 97.6 [Ours] < 98.0 [tilde] (6,24)\n\n****** FAILURE ******\n");

  std::ostringstream b;
  const auto r36 = run_float_replica(make_params(4, 0), 36, 36, 1000000, b);
  CHECK(r36.d == 36);
  CHECK(r36.n == 6928);
  CHECK(b.str() == "Error: 1469828390203.3 [Ours] < 1469922992914.0 [tilde] (36,6928)\n\n****** FAILURE ******\n");

  std::ostringstream c;
  CHECK(run_float_replica(make_params(2, 0), 7, 10, 1000000, c).success);
  CHECK(c.str().find("- n_L(7) = 46\n(B0) OK\n- n_L(8) = 47\n- n_L(9) = 51\n(B1) OK\n") == 0);

  std::ostringstream d;
  const auto oom = run_float_replica(make_params(4, 0), 37, 36, 1000, d);
  CHECK(oom.out_of_memory);
  CHECK(d.str().find("Error: Out of Memory") != std::string::npos);
}

TEST_CASE("rigorous and float replica agree on the verdicts") {
  for (auto [a, b, l, dab] : {std::tuple{2, 0, 5, 10}, std::tuple{2, 0, 6, 10}, std::tuple{2, 0, 7, 10},
                              std::tuple{4, 0, 30, 36}, std::tuple{4, 0, 36, 36}}) {
    std::ostringstream sink;
    const auto fr = run_float_replica(make_params(a, b), l, dab, 1000000, sink);
    CheckerConfig cfg = config(a, b, l, dab);
    cfg.record_level = RecordLevel::Critical;
    const auto rr = run_checker(cfg);
    CHECK(fr.success == std::holds_alternative<Certificate>(rr));
    if (auto* f = std::get_if<FailureReport>(&rr)) {
      CHECK(f->d == fr.d);
      CHECK(f->n == static_cast<std::uint64_t>(fr.n));
    }
  }
}
