#include <doctest.h>

#include <cmath>
#include <random>

#include "ultraseq/genfun.hpp"
#include "ultraseq/kernels.hpp"

using namespace ultraseq;

namespace {

// Independent oracle for the normalized bump: midpoint rule on a fine grid.
double bump_mass() {
  const int m = 200000;
  double s = 0.0;
  for (int i = 0; i < m; ++i) {
    const double x = -1.0 + (i + 0.5) * 2.0 / m;
    s += std::exp(-1.0 / (1.0 - x * x));
  }
  return s * 2.0 / m;
}

double bump_square_mass() {
  const int m = 200000;
  const double c = bump_mass();
  double s = 0.0;
  for (int i = 0; i < m; ++i) {
    const double x = -1.0 + (i + 0.5) * 2.0 / m;
    const double v = std::exp(-1.0 / (1.0 - x * x)) / c;
    s += v * v;
  }
  return s * 2.0 / m;
}

double slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

SmoothSeq delta() { return mollify(Mollifier::standard()); }

}  // namespace

TEST_CASE("seminorm examples") {
  const SmoothSeq s = constant_seq(sine());
  // the default sup domain for p_0 is [-1, 1]; |sin| reaches 1 once it covers pi/2
  CHECK(seminorm(s, 1, {0, 2.0}) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(seminorm(s, 1, {1}) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(seminorm(s, 1, {0}) == doctest::Approx(std::sin(1.0)).epsilon(1e-12));
  CHECK(seminorm(zero_seq(), 7, {3}) == 0.0);
  const double peak = std::exp(-1.0) / bump_mass();
  for (long n : {4L, 16L, 64L}) CHECK(seminorm(delta(), n, {0}) == doctest::Approx(n * peak).epsilon(1e-10));
  CHECK_THROWS_AS(seminorm(delta(), 4, {13}), std::invalid_argument);
}

TEST_CASE("mollify") {
  const Mollifier phi = Mollifier::standard();
  const double peak = std::exp(-1.0) / bump_mass();
  // sup |phi'| by brute force on the unnormalized bump
  double d1 = 0.0;
  for (int i = 1; i < 200000; ++i) {
    const double x = -1.0 + i * 1e-5;
    const double u = 1.0 - x * x;
    d1 = std::max(d1, std::abs(-2.0 * x / (u * u) * std::exp(-1.0 / u)));
  }
  d1 /= bump_mass();
  for (long n : {1L, 5L, 64L}) {
    const SmoothFn f = mollify(phi, n);
    const auto q = kernels::integrate_panels([&](double x) { return f(x); }, -1.0 / n, 1.0 / n, 4, 1e-12);
    CHECK(q.value == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(seminorm(delta(), n, {0, 1.0, 1e-5 / n}) == doctest::Approx(n * peak).epsilon(1e-8));
    double sup1 = 0.0;
    for (int i = -100000; i <= 100000; ++i) sup1 = std::max(sup1, std::abs(f(i * 1e-5 / n, 1)));
    CHECK(sup1 == doctest::Approx(n * n * d1).epsilon(1e-6));
  }
}

TEST_CASE("moment classes") {
  CHECK(Mollifier::standard().moment_class == 1);
  CHECK(Mollifier::corrected().moment_class >= 3);
  SmoothFn odd;
  odd.jet = [b = bump()](double x, std::span<double> out) {
    b.jet(x, out);
    for (double& v : out) v *= 0.0;
    out[0] = x * b(x);
  };
  odd.support = Interval{-1.0, 1.0};
  odd.label = "x*bump";
  CHECK_THROWS_AS(moment_class(odd, 4, 1e-8), std::invalid_argument);
}

TEST_CASE("classify_fun") {
  const auto w = catalog("colombeau");
  const Classification d = classify_fun(delta(), 2, w, Mode::standard);
  CHECK(d.verdict == Verdict::moderate);
  const Classification d2 = classify_fun(product(delta(), delta()), 0, w, Mode::standard);
  CHECK(d2.verdict == Verdict::moderate);
  const Classification s = classify_fun(constant_seq(sine()), 2, w, Mode::standard);
  CHECK(s.verdict == Verdict::moderate);
  for (const auto& detail : s.details) CHECK(detail.value.log_value == doctest::Approx(0.0).epsilon(0.02));
  const UltranormValue u = ultranorm(seminorm_channel(product(delta(), delta()), 0), w.member(1));
  CHECK(u.log_value == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("seminorm scaling law") {
  for (int nu = 0; nu <= 3; ++nu) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (long n = 16; n <= 1024; n *= 2) {
      xs.push_back(std::log(static_cast<double>(n)));
      ys.push_back(std::log(seminorm(delta(), n, {nu})));
    }
    CHECK(slope(xs, ys) == doctest::Approx(nu + 1.0).epsilon(0.05));
  }
}

TEST_CASE("pairing examples") {
  const TestFunction psi = test_bump(0.1, 0.7);
  const double psi0 = psi.psi(0.0);
  CHECK(std::abs(pairing(delta(), 256, psi) - psi0) <= 1e-3);
  CHECK(pairing(zero_seq(), 10, psi) == 0.0);

  const SmoothSeq d2 = product(delta(), delta());
  std::vector<double> xs;
  std::vector<double> ys;
  for (long n = 16; n <= 1024; n *= 2) {
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(pairing(d2, n, psi)));
  }
  CHECK(slope(xs, ys) == doctest::Approx(1.0).epsilon(0.1));
  CHECK(pairing(d2, 1024, psi) / 1024.0 == doctest::Approx(psi0 * bump_square_mass()).epsilon(1e-3));
}

TEST_CASE("weak association of generalized functions") {
  const AssocKind weak = AssocKind::weak();
  const FunAssocVerdict a = weak_assoc_fun(delta(), reindexed(delta(), 2), weak);
  CHECK(a.holds == Truth::yes);
  CHECK(a.per_test.size() == 5);
  CHECK(a.format().find("with respect to the given test set") != std::string::npos);

  const SmoothSeq d2 = product(delta(), delta());
  CHECK(weak_assoc_fun(d2, constant_seq(sine()), weak).holds == Truth::no);

  const double c = bump_square_mass();
  const SmoothSeq lhs = scaled(d2, [](long n) { return 1.0 / n; }, "1/n");
  const SmoothSeq rhs = scaled(delta(), [c](long) { return c; }, "c");
  CHECK(weak_assoc_fun(lhs, rhs, weak).holds == Truth::yes);

  // adding the negligible e^{-n} sin leaves every verdict unchanged
  const SmoothSeq j = scaled(constant_seq(sine()), [](long n) { return std::exp(-static_cast<double>(n)); }, "e^-n");
  CHECK(weak_assoc_fun(sum(lhs, j), rhs, weak).holds == Truth::yes);
  CHECK(weak_assoc_fun(sum(d2, j), constant_seq(sine()), weak).holds == Truth::no);

  CHECK_THROWS_AS(weak_assoc_fun(lhs, rhs, weak, {}), std::invalid_argument);
}

TEST_CASE("extracted sequences") {
  const std::vector<Mollifier> probes{Mollifier::corrected()};
  const ExtractedReport r = extracted_membership([](const Mollifier& phi) { return mollify(phi); }, 0, 3, probes);
  REQUIRE(r.entries.size() == 1);
  CHECK(r.entries[0].value.log_value == doctest::Approx(1.0).epsilon(0.05));
  CHECK(r.entries[0].in_f == Truth::yes);
  CHECK(r.entries[0].in_k == Truth::no);

  const ExtractedReport z = extracted_membership([](const Mollifier&) { return zero_seq(); }, 2, 3, probes);
  CHECK(z.entries[0].in_k == Truth::yes);

  const ExtractedReport e = extracted_membership(
      [](const Mollifier& phi) {
        return scaled(mollify(phi), [](long n) { return std::exp(static_cast<double>(n)); }, "e^n");
      },
      0, 3, probes);
  CHECK(e.entries[0].in_f == Truth::no);

  CHECK_THROWS_AS(extracted_membership([](const Mollifier& phi) { return mollify(phi); }, 0, 3,
                                       {Mollifier::standard()}),
                  std::invalid_argument);
}

TEST_CASE("seminorm properties on random pairs") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto random_fn = [&]() -> SmoothSeq {
    switch (rng() % 4) {
      case 0: return constant_seq(sine());
      case 1: return constant_seq(polynomial({u(rng), u(rng), u(rng)}));
      case 2: return constant_seq(bump(0.5 * u(rng), 1.0 + 0.5 * u(rng)));
      default: return delta();
    }
  };
  for (int trial = 0; trial < 24; ++trial) {
    const SmoothSeq f = random_fn();
    const SmoothSeq g = random_fn();
    const long n = 1 + static_cast<long>(rng() % 32);
    for (int nu = 0; nu < 3; ++nu) {
      const double h = 1.0 / 1024.0;
      CHECK(seminorm(f, n, {nu, -1.0, h}) <= seminorm(f, n, {nu + 1, -1.0, h}) * (1 + 1e-12));
      const double pfg = seminorm(product(f, g), n, {nu, -1.0, h});
      CHECK(pfg <= std::pow(2.0, nu) * seminorm(f, n, {nu, -1.0, h}) * seminorm(g, n, {nu, -1.0, h}) * (1 + 1e-9));
    }
  }
}

TEST_CASE("derivative consistency") {
  const std::vector<SmoothSeq> fs{constant_seq(sine()), delta(), constant_seq(bump(0.2, 0.9)),
                                  exp_seq(constant_seq(sine())), product(delta(), constant_seq(sine()))};
  for (const auto& f : fs) {
    for (int alpha = 0; alpha < 4; ++alpha) {
      for (double x : {-0.31, 0.05, 0.42}) {
        const long n = 3;
        const double h = 1e-4;
        const double fd = (f.value(n, x + h, alpha) - f.value(n, x - h, alpha)) / (2 * h);
        const double exact = f.value(n, x, alpha + 1);
        // central differences: error h^2/6 |f'''| plus rounding
        const double bound = h * h / 3.0 * std::abs(f.value(n, x, alpha + 3)) + 1e-8 * (std::abs(exact) + 1.0) +
                             1e-12 * std::abs(f.value(n, x, alpha)) / h;
        CHECK(std::abs(fd - exact) <= bound);
      }
    }
  }
}
