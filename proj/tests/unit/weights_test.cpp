#include <doctest.h>

#include <cmath>

#include "ultraseq/weights.hpp"

using namespace ultraseq;

TEST_CASE("catalog entries") {
  const WeightFamily c = catalog("colombeau");
  CHECK(c.direction() == Direction::single);
  CHECK(c.member(1).value(100) == doctest::Approx(1.0 / std::log(100.0)));
  CHECK(c.member(1).first_index() == 2);

  const WeightFamily e = catalog("egorov", {1, 3, {}});
  const WeightSeq r3 = e.member(3);
  for (long n = 1; n <= 6; ++n) CHECK(r3.value(n) == (n <= 3 ? 1.0 : 0.0));
  CHECK(r3.zero_to_zero_is_zero());

  const WeightFamily u = catalog("ultra");
  CHECK(u.direction() == Direction::increasing);
  CHECK(u.member(2).value(10) == doctest::Approx(0.01));

  CHECK(catalog("infra-exponential").unit_ball());
  CHECK_THROWS_AS(catalog("nope"), std::invalid_argument);
  CHECK_THROWS_AS(catalog("ultra", {1, 4, {}}), std::invalid_argument);
  CHECK_THROWS_AS(catalog("custom", {0, 0, {parse("n")}}), std::invalid_argument);
  CHECK_THROWS_AS(catalog("custom", {0, 0, {parse("1/log(n)"), parse("1/n"), parse("1/loglog(n)")}}),
                  std::invalid_argument);
}

TEST_CASE("every catalog family satisfies its declared direction") {
  for (const char* name : {"colombeau", "ultra", "egorov", "infra-exponential", "exponential"}) {
    CAPTURE(name);
    const WeightFamily w = catalog(name);
    CHECK(verify_direction(w).holds);
    for (int m : w.indices(8)) {
      const WeightSeq r = w.member(m);
      if (r.egorov_m()) continue;
      CHECK(r.validate());
      if (const GrowthExpr* e = r.expr()) CHECK(compare(*e, GrowthExpr::constant(1)).order == Order::less);
    }
  }
}

TEST_CASE("scale axioms") {
  const AsymptoticScale poly = AsymptoticScale::geometric(parse("1/n"));
  const ScaleAxiomReport rp = verify_scale_axioms(poly, {1, 2, 3, 5});
  CHECK(rp.all_pass());
  for (const auto& e : rp.entries) CHECK(*e.square_witness == 2 * e.m + 1);

  const AsymptoticScale expo = AsymptoticScale::geometric(parse("exp(-n)"));
  const ScaleAxiomReport re = verify_scale_axioms(expo, {1, 2, 3});
  CHECK(re.all_pass());
  for (const auto& e : re.entries) CHECK(*e.square_witness == 2 * e.m + 1);

  const AsymptoticScale constant = AsymptoticScale::geometric(GrowthExpr::constant(0.5));
  const ScaleAxiomReport rc = verify_scale_axioms(constant, {1, 2});
  CHECK_FALSE(rc.all_pass());
  CHECK_FALSE(rc.entries[0].decreasing);
}

TEST_CASE("scale_to_weights reproduces a_m = exp(-1/r^m)") {
  for (const char* base : {"1/n", "exp(-n)"}) {
    CAPTURE(base);
    const AsymptoticScale a = AsymptoticScale::geometric(parse(base));
    const WeightFamily w = scale_to_weights(a);
    CHECK(w.direction() == Direction::decreasing);
    for (int m = 1; m <= 5; ++m) {
      for (long n : {2L, 10L, 100L, 10000L, 1000000L}) {
        const double r = w.member(m).value(n);
        CHECK(-1.0 / r == doctest::Approx(a.member(m).log_value(n)).epsilon(1e-12));
      }
    }
  }
  const WeightFamily w1 = scale_to_weights(AsymptoticScale::geometric(parse("1/n")), 1);
  CHECK(w1.member(1).value(50) == doctest::Approx(1 / std::log(50.0)));
}
