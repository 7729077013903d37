#include <cmath>
#include <random>

#include "doctest.h"
#include "rabi_qes/errors.hpp"
#include "rabi_qes/polynomial.hpp"
#include "rabi_qes/rational.hpp"
#include "rabi_qes/roots.hpp"

using namespace rabi_qes;
using namespace rabi_qes::exact;

namespace {

const auto U = BivariatePolynomial::u();
const auto W = BivariatePolynomial::w();

BivariatePolynomial p1() { return U * ExactScalar(4) + W - BivariatePolynomial(1); }
BivariatePolynomial p2() {
  return U * U * ExactScalar(32) + U * (W * ExactScalar(12) - BivariatePolynomial(32)) + W * W - W * ExactScalar(5) +
         BivariatePolynomial(4);
}

ExactScalar random_rational(std::mt19937& rng, long span = 50) {
  std::uniform_int_distribution<long> num(-span, span);
  std::uniform_int_distribution<long> den(1, span);
  return make_ratio(num(rng), den(rng));
}

}  // namespace

TEST_CASE("parse_exact reads decimals exactly") {
  CHECK(parse_exact("0.6") == make_ratio(3, 5));
  CHECK(parse_exact("-1.25e-1") == make_ratio(-1, 8));
  CHECK(parse_exact("3/6") == make_ratio(1, 2));
  CHECK(parse_exact("12") == ExactScalar(12));
  CHECK(parse_exact("2E2") == ExactScalar(200));
  CHECK_THROWS_AS(parse_exact("abc"), DomainError);
  CHECK_THROWS_AS(parse_exact("1.2.3"), DomainError);
  CHECK_THROWS_AS(parse_exact(""), DomainError);
}

TEST_CASE("to_double rounds to nearest") {
  CHECK(to_double(make_ratio(4, 25)) == 0.16);
  CHECK(to_double(make_ratio(1, 3)) == 1.0 / 3.0);
  CHECK(to_double(make_ratio(-2, 3)) == -2.0 / 3.0);
  CHECK(to_double(ExactScalar(0)) == 0.0);
}

TEST_CASE("exact scalar arithmetic is exact and canonical") {
  std::mt19937 rng(7);
  for (int i = 0; i < 500; ++i) {
    const auto a = random_rational(rng);
    const auto b = random_rational(rng);
    CHECK(ExactScalar((a + b) - b) == a);
    if (sgn(b) != 0) CHECK(ExactScalar((a * b) / b) == a);
    const ExactScalar s = a * b + a / (b * b + 1);
    CHECK(sgn(s.get_den()) > 0);
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), s.get_num().get_mpz_t(), s.get_den().get_mpz_t());
    CHECK(g == 1);
  }
}

TEST_CASE("bivariate ring arithmetic") {
  CHECK(p1() + BivariatePolynomial() == p1());
  CHECK((U * W).terms().size() == 1);
  CHECK((U * W).coeff(1, 1) == 1);
  CHECK((p1() - p1()).is_zero());
  CHECK((p1() * p2()).degree_u() == 3);
  CHECK((p1() * p2()).degree_w() == 3);
  CHECK(p1().evaluate(make_ratio(4, 25), make_ratio(9, 25)) == 0);

  // no zero coefficients are ever stored
  const auto cancel = U * ExactScalar(2) + W - U * ExactScalar(2);
  CHECK(cancel.terms().size() == 1);
  CHECK((p1() * ExactScalar(0)).is_zero());
}

TEST_CASE("substitute_w") {
  const auto q1 = substitute_w(p1(), make_ratio(9, 25));
  CHECK(q1 == UnivariatePolynomial({make_ratio(-16, 25), 4}));

  const auto q2 = substitute_w(p2(), make_ratio(1, 4));
  CHECK(q2 == UnivariatePolynomial({make_ratio(45, 16), -29, 32}));

  const auto free_of_w = U * U * ExactScalar(3) - U + BivariatePolynomial(7);
  CHECK(substitute_w(free_of_w, make_ratio(5, 3)) == UnivariatePolynomial({7, -1, 3}));

  std::mt19937 rng(11);
  for (int i = 0; i < 50; ++i) {
    const auto u = random_rational(rng, 9);
    const auto w = random_rational(rng, 9);
    CHECK(substitute_w(p2(), w).evaluate(u) == p2().evaluate(u, w));
  }
}

TEST_CASE("univariate division and gcd") {
  const std::vector<ExactScalar> roots{1, 2, 2, make_ratio(1, 3)};
  const auto p = UnivariatePolynomial::from_roots(roots);
  CHECK(p.degree() == 4);
  const auto d = divide(p, UnivariatePolynomial({-2, 1}));
  CHECK(d.remainder.is_zero());
  CHECK(d.quotient.degree() == 3);
  CHECK(gcd(p, p.derivative()) == UnivariatePolynomial({-2, 1}));
  CHECK(square_free_part(p).degree() == 3);
  CHECK_THROWS_AS(divide(p, UnivariatePolynomial()), DomainError);
}

TEST_CASE("sturm_isolate on the worked examples") {
  SUBCASE("linear") {
    const UnivariatePolynomial p({make_ratio(-16, 25), 4});
    const auto b = sturm_isolate(p, 0.0, 10.0);
    REQUIRE(b.size() == 1);
    CHECK(b[0].lo < make_ratio(4, 25));
    CHECK(make_ratio(4, 25) <= b[0].hi);
    CHECK(refine_root(p, b[0], 1e-14) == 0.16);
  }
  SUBCASE("quadratic from P2 at w = 1/4") {
    const UnivariatePolynomial p({make_ratio(45, 16), -29, 32});
    const auto b = sturm_isolate(p, 0.0, 10.0);
    REQUIRE(b.size() == 2);
    // quadratic formula, u = (29 -+ sqrt(481)) / 64
    const double lo_root = (29 - std::sqrt(481.0)) / 64;
    const double hi_root = (29 + std::sqrt(481.0)) / 64;
    CHECK(lo_root == doctest::Approx(0.11044199688341705).epsilon(1e-15));
    CHECK(refine_root(p, b[0], 1e-14) == doctest::Approx(lo_root).epsilon(1e-14));
    CHECK(refine_root(p, b[1], 1e-14) == doctest::Approx(hi_root).epsilon(1e-14));
    CHECK(std::abs(refine_root(p, b[0], 1e-14) - 0.11044199688341705) <= 1e-14);
    CHECK(std::abs(refine_root(p, b[1], 1e-14) - 0.79580800311658295) <= 1e-14);
  }
  SUBCASE("no real roots") {
    const UnivariatePolynomial p({1, 0, 1});
    CHECK(sturm_isolate(p, -10.0, 10.0).empty());
  }
  SUBCASE("errors") {
    CHECK_THROWS_WITH_AS(sturm_isolate(UnivariatePolynomial(), 0.0, 1.0), "zero polynomial", DomainError);
    CHECK_THROWS_AS(sturm_isolate(UnivariatePolynomial({1, 1}), 1.0, 0.0), DomainError);
  }
}

TEST_CASE("roots on bracket boundaries and multiple roots") {
  // roots 0 (excluded by the half-open interval), 1/2 and 1 (split point).
  const std::vector<ExactScalar> roots{0, make_ratio(1, 2), 1, 1, 1};
  const auto p = UnivariatePolynomial::from_roots(roots);
  const auto b = sturm_isolate(p, ExactScalar(0), ExactScalar(2));
  REQUIRE(b.size() == 2);
  CHECK(b[0].multiplicity == 1);
  CHECK(b[1].multiplicity == 3);
  CHECK(refine_root(p, b[0], 1e-14) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(refine_root(p, b[1], 1e-14) == doctest::Approx(1.0).epsilon(1e-14));
  for (const auto& br : b) CHECK(br.lo < br.hi);
  CHECK(b[0].hi <= b[1].lo);

  // root exactly at hi
  const auto at_hi = sturm_isolate(UnivariatePolynomial({-3, 1}), ExactScalar(0), ExactScalar(3));
  REQUIRE(at_hi.size() == 1);
  CHECK(sgn(at_hi[0].value_hi) == 0);
  CHECK(refine_root(UnivariatePolynomial({-3, 1}), at_hi[0]) == 3.0);
}

TEST_CASE("property: Sturm count matches constructed roots and grid sign changes") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> degree(1, 6);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<ExactScalar> roots;
    const int d = degree(rng);
    for (int i = 0; i < d; ++i) roots.push_back(random_rational(rng, 20));
    const auto p = UnivariatePolynomial::from_roots(roots) * ExactScalar(trial % 2 ? -3 : 2);

    std::vector<ExactScalar> distinct = roots;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    const ExactScalar lo(-30), hi(30);
    const auto brackets = sturm_isolate(p, lo, hi);
    CHECK(brackets.size() == distinct.size());
    CHECK(SturmSequence(square_free_part(p)).count(lo, hi) == static_cast<int>(distinct.size()));

    // simple roots: count sign changes of p on a grid finer than the
    // minimum root separation
    bool all_simple = distinct.size() == roots.size();
    if (all_simple) {
      int changes = 0;
      int last = p.sign_at(lo);
      for (int i = 1; i <= 60 * 400; ++i) {
        const ExactScalar x = lo + make_ratio(i, 400);
        const int s = p.sign_at(x);
        if (s == 0) continue;
        if (s != last) ++changes;
        last = s;
      }
      CHECK(changes == static_cast<int>(distinct.size()));
    }

    for (std::size_t k = 0; k < brackets.size(); ++k) {
      const double r = refine_root(p, brackets[k], 1e-14);
      const double truth = to_double(distinct[k]);
      CHECK(std::abs(r - truth) <= 1e-14 * std::max(1.0, std::abs(truth)));
      if (brackets[k].multiplicity == 1) {
        const double pr = to_double(p.evaluate(from_double(r)));
        const double dpr = to_double(p.derivative().evaluate(from_double(r)));
        CHECK(std::abs(pr) <= std::abs(dpr) * 1e-14 * std::max(1.0, std::abs(r)));
      }
    }
  }
}

TEST_CASE("cauchy bound contains every root") {
  const std::vector<ExactScalar> roots{-7, make_ratio(1, 9), 5};
  const auto p = UnivariatePolynomial::from_roots(roots);
  const auto b = cauchy_bound(p);
  for (const auto& r : roots) CHECK(abs(r) < b);
  CHECK_THROWS_AS(cauchy_bound(UnivariatePolynomial()), DomainError);
}
