#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "ultraseq/kernels.hpp"

using namespace ultraseq::kernels;

TEST_CASE("grid_sup agrees with the serial reference") {
  std::vector<double> xs;
  for (int i = -1000; i <= 1000; ++i) xs.push_back(i * 0.003);
  const JetFn f = [](double x, std::span<double> jet) {
    jet[0] = std::sin(3 * x);
    if (jet.size() > 1) jet[1] = 3 * std::cos(3 * x);
    if (jet.size() > 2) jet[2] = -9 * std::sin(3 * x);
  };
  for (int order = 0; order <= 2; ++order) {
    CHECK(grid_sup(f, order, xs) == grid_sup_serial(f, order, xs));
  }
  CHECK(grid_sup_serial(f, 2, xs) == doctest::Approx(9.0).epsilon(1e-4));
}

TEST_CASE("map_indices agrees with the serial reference") {
  std::vector<long> idx;
  for (long i = 1; i < 5000; i += 3) idx.push_back(i);
  std::vector<double> a(idx.size()), b(idx.size());
  auto fn = [](long n) { return std::log(static_cast<double>(n)) / n; };
  map_indices(idx, fn, a);
  map_indices_serial(idx, fn, b);
  CHECK(a == b);
}

TEST_CASE("panel quadrature") {
  auto f = [](double x) { return std::exp(-x * x); };
  const QuadratureResult p = integrate_panels(f, -6, 6, 8, 1e-12);
  const QuadratureResult s = integrate_panels_serial(f, -6, 6, 8, 1e-12);
  CHECK(p.value == s.value);
  CHECK(p.converged);
  CHECK(p.value == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-11));
  CHECK(integrate_adaptive(f, 1, 1, 1e-9).value == 0.0);
}
