#include <doctest.h>

#include <cmath>
#include <random>

#include "ultraseq/asymptotics.hpp"

using namespace ultraseq;

namespace {

// Independent evaluation of log f(n) straight from the term fields.
double brute_log(const GrowthExpr& e, long n) {
  double best = -INFINITY;
  double acc = 0.0;
  std::vector<double> logs;
  const double x = static_cast<double>(n);
  for (const auto& t : e.branch(n % 2 == 0 ? Parity::even : Parity::odd)) {
    double l = std::log(t.coeff) + t.pow_n * std::log(x) + t.pow_log * std::log(std::log(x)) +
               t.pow_loglog * std::log(std::log(std::log(x)));
    for (const auto& m : t.exp_part) l += m.coeff * std::pow(x, m.n_power) * std::pow(std::log(x), m.log_power);
    logs.push_back(l);
    best = std::max(best, l);
  }
  if (logs.empty()) return -INFINITY;
  for (double l : logs) acc += std::exp(l - best);
  return best + std::log(acc);
}

}  // namespace

TEST_CASE("parse maps the grammar onto terms") {
  const GrowthExpr e = parse("n^2 * log(n)");
  REQUIRE(e.terms().size() == 1);
  const GrowthTerm& t = e.terms()[0];
  CHECK(t.coeff == 1.0);
  CHECK(t.pow_n == 2.0);
  CHECK(t.pow_log == 1.0);
  CHECK(t.pow_loglog == 0.0);
  CHECK(t.exp_part.empty());

  CHECK(parse("0").is_zero());

  const GrowthExpr s = parse("exp(3*n^0.5) + n^7");
  REQUIRE(s.terms().size() == 2);
  CHECK(s.terms()[0].exp_part.size() == 1);
  for (long n : {10000L, 1000000L}) {
    CHECK(s.terms()[0].log_value(static_cast<double>(n)) > s.terms()[1].log_value(static_cast<double>(n)));
  }
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse("n^"), ParseError);
  CHECK_THROWS_AS(parse("n + + n"), ParseError);
  CHECK_THROWS_AS(parse("-n"), SemanticError);
  CHECK_THROWS_AS(parse("exp(n^-1)"), SemanticError);
  try {
    parse("n * foo");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("format then parse is the identity") {
  for (const char* text : {"n^2*log(n)", "exp(3*n^0.5) + n^7", "alt(n, 1/n)", "5*loglog(n)^-2",
                           "exp(-n)*n^3 + 2", "1/log(n)", "exp(-log(n)^2)", "0", "(n+1)^2"}) {
    const GrowthExpr e = parse(text);
    CAPTURE(text);
    CAPTURE(e.format());
    CHECK(parse(e.format()) == e);
  }
}

TEST_CASE("compare decides o() and same order") {
  for (int m = 1; m < 6; ++m) {
    CHECK(compare(GrowthExpr::n_power(-(m + 1)), GrowthExpr::n_power(-m)).order == Order::less);
  }
  const Dominance same = compare(parse("3*n^2"), parse("3*n^2"));
  CHECK(same.order == Order::same);
  CHECK(same.ratio == doctest::Approx(1.0));
  CHECK(compare(parse("n^2*log(n)"), parse("n^2")).order == Order::greater);
  CHECK(compare(parse("6*n^2 + n"), parse("3*n^2")).ratio == doctest::Approx(2.0));
  CHECK(compare(GrowthExpr::zero(), parse("exp(-n)")).order == Order::less);
  CHECK_THROWS_AS(compare(parse("alt(n, 1)"), parse("n")), std::invalid_argument);
}

TEST_CASE("algebra examples") {
  CHECK(mul(GrowthExpr::n_power(2.5), GrowthExpr::n_power(-1)) == GrowthExpr::n_power(1.5));
  CHECK(pow(parse("exp(n)"), 0.5) == parse("exp(0.5*n)"));
  const LogExpr l = log_expr(parse("4*n^3"));
  LogCombo want;
  want.add(LogMonomial::power(0, 1), 3.0);
  want.add(LogMonomial::one(), std::log(4.0));
  CHECK(*l.even == want);
  CHECK_THROWS_AS(log_expr(GrowthExpr::zero()), SemanticError);
}

TEST_CASE("limit_of_product") {
  const GrowthExpr colombeau = parse("1/log(n)");
  LogCombo gamma_log;
  gamma_log.add(LogMonomial::power(0, 1), 2.5);
  CHECK(limit_of_product(colombeau, log_expr_plain(gamma_log)).hi == doctest::Approx(2.5));

  LogCombo sigma_n;
  sigma_n.add(LogMonomial::power(1, 0), -0.75);
  CHECK(limit_of_product(parse("1/n"), log_expr_plain(sigma_n)).hi == doctest::Approx(-0.75));

  LogCombo neg_loglog;
  neg_loglog.add(LogMonomial::loglog(), -1.0);
  CHECK(limit_of_product(colombeau, log_expr_plain(neg_loglog)).hi == 0.0);

  const LimitValue osc = limit_of_product(colombeau, log_expr(parse("alt(n^3, n^-1)")));
  CHECK(osc.oscillating());
  CHECK(osc.lo == doctest::Approx(-1.0));
  CHECK(osc.hi == doctest::Approx(3.0));

  CHECK(std::isinf(limit_of_product(colombeau, log_expr(parse("exp(n)"))).hi));
  CHECK(limit_of_product(colombeau, log_expr(parse("exp(-n)"))).hi == -INFINITY);
}

TEST_CASE("random expressions: numeric evaluation agrees with the algebra") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coeff(0.1, 5.0);
  std::uniform_int_distribution<int> pw(-3, 3);
  std::uniform_int_distribution<int> coin(0, 1);
  auto random_term = [&]() {
    GrowthTerm t;
    t.coeff = coeff(rng);
    t.pow_n = pw(rng) * 0.5;
    t.pow_log = pw(rng);
    if (coin(rng)) t.exp_part.push_back({pw(rng) * 0.1 + 0.05, 0.5, 0.0});
    return GrowthExpr::term(t);
  };
  for (int i = 0; i < 200; ++i) {
    const GrowthExpr a = add(random_term(), random_term());
    const GrowthExpr b = random_term();
    for (long n : {1000L, 100000L, 1000000L}) {
      const double la = brute_log(a, n);
      const double lb = brute_log(b, n);
      CHECK(a.log_value(n) == doctest::Approx(la).epsilon(1e-9));
      CHECK(mul(a, b).log_value(n) == doctest::Approx(la + lb).epsilon(1e-9));
      CHECK(pow(b, 1.5).log_value(n) == doctest::Approx(1.5 * lb).epsilon(1e-9));
      CHECK(add(a, b).log_value(n) == doctest::Approx(std::log(std::exp(la) + std::exp(lb))).epsilon(1e-9));
    }
  }
}

TEST_CASE("compare is a total preorder that matches the numeric trend") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pw(-4, 4);
  std::uniform_real_distribution<double> coeff(0.5, 4.0);
  auto random_expr = [&]() {
    GrowthTerm t;
    t.coeff = coeff(rng);
    t.pow_n = pw(rng);
    t.pow_log = pw(rng) % 2;
    // exp parts large enough to dominate polynomial factors by n = 10^6
    if (pw(rng) > 2) t.exp_part.push_back({(pw(rng) >= 0 ? 1.0 : -1.0) * 0.5, 0.5, 0.0});
    return GrowthExpr::term(t);
  };
  for (int i = 0; i < 300; ++i) {
    const GrowthExpr a = random_expr();
    const GrowthExpr b = random_expr();
    const GrowthExpr c = random_expr();
    const Order ab = compare(a, b).order;
    CAPTURE(a.format());
    CAPTURE(b.format());
    const Order ba = compare(b, a).order;
    CHECK((ab == Order::less) == (ba == Order::greater));
    if (ab == Order::less && compare(b, c).order == Order::less) CHECK(compare(a, c).order == Order::less);

    // log ratio trend at 1e3..1e6
    std::vector<double> r;
    for (long n : {1000L, 10000L, 100000L, 1000000L}) r.push_back(brute_log(a, n) - brute_log(b, n));
    if (ab == Order::same) {
      CHECK(std::exp(r.back()) == doctest::Approx(compare(a, b).ratio).epsilon(0.2));
    } else if (ab == Order::less) {
      CHECK(r.back() < r.front());
    } else {
      CHECK(r.back() > r.front());
    }
  }
}
