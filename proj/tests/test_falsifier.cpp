#include "doctest.h"

#include <algorithm>

#include "diamcert/compare.hpp"
#include "diamcert/errors.hpp"
#include "diamcert/falsifier.hpp"

using namespace diamcert;

TEST_CASE("parsing") {
  const auto p = BivariatePolynomial::parse("0:1:1 1:0:-1");
  CHECK(p.evaluate(4, 8) == 4);
  CHECK(p.n_degree() == 1);
  CHECK(p.n_coefficient(0, 4) == -4);
  const auto h = BivariatePolynomial::parse("  2:3:-7/3\t0:0:+5 2:3:1/3 ");
  CHECK(h.terms().size() == 2);
  CHECK(h.terms().at({2, 3}) == -2);
  CHECK(h.to_string() == "0:0:5 2:3:-2");
  CHECK(BivariatePolynomial::parse("0:1:1 0:0:0").to_string() == "0:1:1");
  for (const char* bad : {"", "1:2", "1:2:3:4", "a:0:1", "0:0:1/0", "0:0:x", "0:-1:2", "0:0:1.5"}) {
    CHECK_THROWS_AS(BivariatePolynomial::parse(bad), ParseError);
  }
}

TEST_CASE("inductive gap by direct evaluation") {
  const auto hirsch = BivariatePolynomial::parse("0:1:1 1:0:-1");
  // p(3,7) + 2 p(4,4) + 2 - p(4,8) = 4 + 0 + 2 - 4
  CHECK(evaluate_inductive_gap(hirsch, 4, 8) == 2);
  CHECK(evaluate_inductive_gap(BivariatePolynomial(), 7, 30) == 2);
  const auto n = BivariatePolynomial::parse("0:1:1");
  CHECK(evaluate_inductive_gap(n, 5, 10) == 11);
  const auto n2 = BivariatePolynomial::parse("0:2:1");
  // (n-1)^2 + 2 floor(n/2)^2 + 2 - n^2 at n = 11: 100 + 50 + 2 - 121
  CHECK(evaluate_inductive_gap(n2, 3, 11) == 31);
  CHECK_THROWS_AS(evaluate_inductive_gap(n, 5, 9), PreconditionViolated);
  CHECK_THROWS_AS(evaluate_inductive_gap(n, 0, 9), PreconditionViolated);
}

TEST_CASE("violations in the first sweep") {
  const auto v1 = find_violation(BivariatePolynomial::parse("0:1:1 1:0:-1"), 4, 8, 100);
  REQUIRE(v1);
  CHECK(v1->d == 4);
  CHECK(v1->n == 8);
  CHECK(v1->gap == 2);
  CHECK(v1->sweep == 0);

  const auto v2 = find_violation(BivariatePolynomial::parse("0:1:1"), 5, 10, 100);
  REQUIRE(v2);
  CHECK(v2->d == 5);
  CHECK(v2->n == 10);
  CHECK(v2->gap == 11);
  CHECK(v2->sweep == 0);

  const auto v3 = find_violation(BivariatePolynomial::parse("0:2:1"), 1000, 5000, 100);
  REQUIRE(v3);
  CHECK(v3->sweep == 0);
  CHECK(v3->gap == evaluate_inductive_gap(BivariatePolynomial::parse("0:2:1"), v3->d, v3->n));
}

TEST_CASE("higher-degree bounds are still falsified") {
  for (const char* text : {"0:3:1 1:0:5", "2:2:1 0:0:100", "0:4:1/7 3:1:2", "5:1:1 0:2:1/1000"}) {
    const auto p = BivariatePolynomial::parse(text);
    const auto v = find_violation(p, 1, 1, 10000);
    REQUIRE(v);
    CHECK(evaluate_inductive_gap(p, v->d, v->n) > 0);
    CHECK(v->n >= 2 * v->d);
  }
}

TEST_CASE("negative leading behaviour exhausts the budget away from small n") {
  const auto p = BivariatePolynomial::parse("0:2:-1");
  CHECK(find_violation(p, 1, 1, 500).has_value());
  CHECK_FALSE(find_violation(p, 10, 20, 500).has_value());
  CHECK_THROWS_AS(find_violation(p, 1, 1, 0), PreconditionViolated);
  CHECK_THROWS_AS(find_violation(p, 0, 1, 10), PreconditionViolated);
}

TEST_CASE("scaling keeps violations whose gap exceeds 2") {
  const auto p = BivariatePolynomial::parse("0:2:1 1:1:-1");
  for (std::uint64_t d = 2; d < 20; ++d) {
    for (std::uint64_t n = 2 * d; n < 2 * d + 40; ++n) {
      const mpq_class gap = evaluate_inductive_gap(p, d, n);
      if (gap <= 2) continue;
      for (const mpq_class c : {mpq_class(1), mpq_class(3, 2), mpq_class(10)}) {
        CHECK(evaluate_inductive_gap(p.scaled(c), d, n) > 0);
      }
    }
  }
}

TEST_CASE("contrast: the (2,0) bound satisfies the inequality on the same probes") {
  const auto f = make_params(2, 0);
  const auto poly = BivariatePolynomial::parse("0:1:1 1:0:-1");
  for (std::uint64_t k = 0; k < 6; ++k) {
    const std::uint64_t d = 10u << k;
    for (std::uint64_t t = 0; t < 6; ++t) {
      const std::uint64_t n = std::max(2 * d, d + 32) << t;
      CHECK(check_inductive_inequality(f, static_cast<std::int64_t>(d), n));
      CHECK(evaluate_inductive_gap(poly, d, n) > 0);
    }
  }
}
