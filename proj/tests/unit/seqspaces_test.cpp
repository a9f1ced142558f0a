#include <doctest.h>

#include <cmath>

#include "ultraseq/seqspaces.hpp"
#include "ultraseq/tail.hpp"

using namespace ultraseq;

namespace {

const WeightSeq kColombeau = WeightSeq::symbolic(parse("1/log(n)"));
const WeightSeq kInfra = WeightSeq::symbolic(parse("1/n"));

SeqRep sym(const char* text) { return SeqRep::symbolic(parse(text)); }

}  // namespace

TEST_CASE("exact ultranorms") {
  for (double g : {-3.0, 0.5, 7.0}) {
    const UltranormValue v = ultranorm(SeqRep::symbolic(GrowthExpr::n_power(g)), kColombeau);
    CHECK(v.kind == UltranormValue::Kind::exact);
    CHECK(v.log_value == doctest::Approx(g));
  }
  CHECK(ultranorm(sym("12.5"), kColombeau).value == 1.0);
  CHECK(ultranorm(sym("12.5"), kInfra).value == 1.0);
  CHECK(ultranorm(sym("1/log(n)"), kColombeau).value == 1.0);
  CHECK(ultranorm(sym("exp(2.5*n)"), kInfra).log_value == doctest::Approx(2.5));
  CHECK(ultranorm(sym("0"), kColombeau).value == 0.0);
  CHECK(ultranorm(sym("exp(n)"), kColombeau).is_infinite());
  CHECK(ultranorm(sym("alt(n^2, n^-5)"), kColombeau).log_value == doctest::Approx(2.0));
  CHECK(ultranorm(sym("n^2"), kColombeau).format() == "exact e^2 ≈ 7.3890561");
}

TEST_CASE("sampled ultranorms bracket the exact values") {
  struct Case {
    std::function<double(long)> f;
    WeightSeq r;
    double exact;
  };
  const std::vector<Case> cases = {
      {[](long n) { return std::pow(double(n), 0.5); }, kColombeau, std::exp(0.5)},
      {[](long n) { return std::pow(double(n), -3.0); }, kColombeau, std::exp(-3.0)},
      {[](long) { return 42.0; }, kColombeau, 1.0},
      {[](long n) { return 1.0 / std::log(double(n)); }, kColombeau, 1.0},
  };
  for (const auto& c : cases) {
    const UltranormValue v = ultranorm(SeqRep::sampled(c.f, 2, 1000000, "f"), c.r);
    CAPTURE(v.describe());
    REQUIRE(v.kind == UltranormValue::Kind::estimated);
    CHECK(v.band.contains(c.exact));
    CHECK(v.band.width() <= 0.25 * c.exact);
  }
  // exp(-0.3 n) underflows long before 10^6, so it is sampled in the log domain
  const UltranormValue e = ultranorm(SeqRep::sampled_log([](long n) { return -0.3 * double(n); }, 1, 1000000, "e"), kInfra);
  CHECK(e.band.contains(std::exp(-0.3)));
  const UltranormValue s = ultranorm(SeqRep::sampled_from(parse("exp(1.5*n)*n^4"), 1000000), kInfra);
  CHECK(s.kind == UltranormValue::Kind::estimated);
  CHECK(s.band.contains(std::exp(1.5)));
}

TEST_CASE("sampled tier reports zero, divergence and inconclusive honestly") {
  CHECK(ultranorm(SeqRep::sampled([](long n) { return std::exp(-std::pow(std::log(double(n)), 2)); }, 2, 1000000, "k"),
                  kColombeau)
            .is_zero());
  CHECK(ultranorm(SeqRep::sampled([](long n) { return std::exp(std::sqrt(double(n))); }, 2, 1000000, "g"), kColombeau)
            .is_infinite());
  CHECK(ultranorm(SeqRep::sampled([](long n) { return n > 20 ? 0.0 : 1.0; }, 2, 1000000, "z"), kColombeau).is_zero());
  // oscillation between regimes at every other dyadic scale never settles
  const auto wild = [](long n) {
    const int k = static_cast<int>(std::log2(double(n)));
    return k % 2 ? std::pow(double(n), 3.0) : 1.0;
  };
  CHECK_FALSE(ultranorm(SeqRep::sampled(wild, 2, 1000000, "w"), kColombeau).decided());
  CHECK_THROWS_AS(SeqRep::sampled([](long) { return 1.0; }, 2, 100, "short"), std::invalid_argument);
}

TEST_CASE("pseudometric") {
  CHECK(pseudometric(sym("n^3"), sym("n^3"), kColombeau).value == 0.0);
  CHECK(pseudometric(sym("n^2"), sym("0"), kColombeau, sym("n^2")).log_value == doctest::Approx(2.0));
  CHECK_THROWS_AS(pseudometric(sym("n^2"), sym("n"), kColombeau), std::invalid_argument);
  const UltranormValue d = pseudometric(SeqRep::sampled([](long n) { return 1.0 / n; }, 2, 1000000, "f"),
                                        SeqRep::sampled([](long n) { return 2.0 / n; }, 2, 1000000, "g"), kColombeau);
  CHECK(d.band.contains(std::exp(-1.0)));
}

TEST_CASE("classification examples") {
  const WeightFamily col = catalog("colombeau");
  const Classification a = classify(sym("n^7"), col, Mode::standard);
  CHECK(a.verdict == Verdict::moderate);
  CHECK(a.negligible == Truth::no);
  CHECK(classify(sym("exp(n)"), col, Mode::standard).verdict == Verdict::divergent);
  CHECK(classify(sym("exp(-log(n)^2)"), col, Mode::standard).verdict == Verdict::negligible);
  CHECK(classify(sym("0"), col, Mode::standard).verdict == Verdict::negligible);

  const WeightFamily eg = catalog("egorov");
  for (const char* text : {"exp(n)", "n^-40", "alt(0, n)", "exp(-n^2)"}) {
    CHECK(classify(sym(text), eg, Mode::standard).verdict == Verdict::moderate);
  }
  CHECK(classify(sym("0"), eg, Mode::standard).verdict == Verdict::negligible);
  CHECK(classify(SeqRep::sampled([](long n) { return n <= 7 ? 3.0 : 0.0; }, 1, 100000, "stationary"), eg,
                 Mode::standard)
            .verdict == Verdict::negligible);
  // exp(-n^2) underflows to 0.0 but is never zero
  CHECK(classify(SeqRep::sampled_log([](long n) { return -double(n) * double(n); }, 1, 100000, "exp(-n^2)"), eg,
                 Mode::standard)
            .verdict == Verdict::moderate);

  const WeightFamily infra = catalog("infra-exponential");
  CHECK(mode_for(infra) == Mode::unit_ball);
  CHECK(classify(sym("exp(0.5*n)"), infra, Mode::unit_ball).verdict == Verdict::divergent);
  CHECK(classify(sym("exp(-0.5*n)"), infra, Mode::unit_ball).verdict == Verdict::negligible);
  CHECK(classify(sym("n^4"), infra, Mode::unit_ball).verdict == Verdict::boundary);
  CHECK_THROWS_AS(classify(Bundle{}, col, Mode::standard), std::invalid_argument);
}

TEST_CASE("family quantifiers") {
  // case II: r^m = 1/(m log n); moderate iff some m gives a finite value
  const WeightFamily poly = scale_to_weights(AsymptoticScale::geometric(parse("1/n")));
  CHECK(poly.direction() == Direction::decreasing);
  const Classification c = classify(sym("n^5"), poly, Mode::standard);
  CHECK(c.verdict == Verdict::moderate);
  CHECK(c.details.size() == 16);
  CHECK(c.format().find("verified up to m_max=16") != std::string::npos);

  // case I (ultra): F is an intersection
  const WeightFamily ultra = catalog("ultra");
  CHECK(classify(sym("exp(n^0.3)"), ultra, Mode::standard).verdict == Verdict::moderate);
  CHECK(classify(sym("exp(n^0.99)"), ultra, Mode::standard).verdict == Verdict::moderate);
  CHECK(classify(sym("exp(n^1.2)"), ultra, Mode::standard).verdict == Verdict::divergent);
  // K is a union: members with m/(m-1) < 1.2 send exp(-n^1.2) to zero
  CHECK(classify(sym("exp(-n^1.2)"), ultra, Mode::standard).verdict == Verdict::negligible);
  CHECK(classify(sym("exp(-n^0.5)"), ultra, Mode::standard).verdict == Verdict::moderate);
}

TEST_CASE("ideal check") {
  const WeightFamily col = catalog("colombeau");
  const IdealCheck ic = ideal_check({sym("exp(-log(n)^2)")}, {sym("n^3")}, {sym("exp(-log(n)^2)*n^3")}, col,
                                    Mode::standard);
  CHECK(ic.premise);
  CHECK(ic.pass);
  CHECK(ideal_check({sym("0")}, {sym("n^9")}, {sym("0")}, col, Mode::standard).pass);
  CHECK_THROWS_AS(ideal_check({sym("0")}, {}, {sym("0")}, col, Mode::standard), std::invalid_argument);
}

TEST_CASE("tends_to_zero") {
  CHECK(tends_to_zero([](long n) { return 1.0 / n; }, 2, 100000, 64, 1e-3).kind == LimitZeroTest::Kind::yes);
  CHECK(tends_to_zero([](long) { return 0.5; }, 2, 100000, 64, 1e-3).kind == LimitZeroTest::Kind::no);
}
