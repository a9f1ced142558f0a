#include "ultraseq/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace ultraseq::kernels {

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

QuadratureResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double k = kKronrod[7] * fc;
  double g = kGauss[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double x = h * kNodes[i];
    const double s = f(c - x) + f(c + x);
    k += kKronrod[i] * s;
    if (i % 2 == 1) g += kGauss[i / 2] * s;
  }
  return {k * h, std::abs((k - g) * h), true};
}

QuadratureResult adaptive(const std::function<double(double)>& f, double a, double b, double tol,
                          int depth) {
  QuadratureResult whole = gk15(f, a, b);
  if (whole.error <= tol || depth <= 0) {
    whole.converged = whole.error <= tol;
    return whole;
  }
  const double m = 0.5 * (a + b);
  QuadratureResult l = adaptive(f, a, m, 0.5 * tol, depth - 1);
  QuadratureResult r = adaptive(f, m, b, 0.5 * tol, depth - 1);
  return {l.value + r.value, l.error + r.error, l.converged && r.converged};
}

QuadratureResult sum_panels(const std::vector<QuadratureResult>& parts) {
  QuadratureResult out;
  for (const auto& p : parts) {
    out.value += p.value;
    out.error += p.error;
    out.converged = out.converged && p.converged;
  }
  return out;
}

}  // namespace

double grid_sup(const JetFn& f, int order, std::span<const double> xs) {
  double best = 0.0;
  const long count = static_cast<long>(xs.size());
#pragma omp parallel reduction(max : best)
  {
    std::vector<double> jet(static_cast<std::size_t>(order) + 1);
#pragma omp for schedule(static)
    for (long i = 0; i < count; ++i) {
      f(xs[i], jet);
      for (double v : jet) best = std::isnan(v) ? INFINITY : std::max(best, std::abs(v));
    }
  }
  return best;
}

double grid_sup_serial(const JetFn& f, int order, std::span<const double> xs) {
  double best = 0.0;
  std::vector<double> jet(static_cast<std::size_t>(order) + 1);
  for (double x : xs) {
    f(x, jet);
    for (double v : jet) best = std::isnan(v) ? INFINITY : std::max(best, std::abs(v));
  }
  return best;
}

void map_indices(std::span<const long> indices, const std::function<double(long)>& fn,
                 std::span<double> out) {
  const long count = static_cast<long>(indices.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < count; ++i) out[i] = fn(indices[i]);
}

void map_indices_serial(std::span<const long> indices, const std::function<double(long)>& fn,
                        std::span<double> out) {
  for (std::size_t i = 0; i < indices.size(); ++i) out[i] = fn(indices[i]);
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double tol, int max_depth) {
  if (a == b) return {};
  return adaptive(f, a, b, tol, max_depth);
}

QuadratureResult integrate_panels(const std::function<double(double)>& f, double a, double b,
                                  int panels, double tol) {
  std::vector<QuadratureResult> parts(static_cast<std::size_t>(std::max(panels, 1)));
  const int count = static_cast<int>(parts.size());
  const double w = (b - a) / count;
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < count; ++i) {
    const double lo = a + w * i;
    const double hi = (i + 1 == count) ? b : a + w * (i + 1);
    parts[i] = integrate_adaptive(f, lo, hi, tol / count);
  }
  return sum_panels(parts);
}

QuadratureResult integrate_panels_serial(const std::function<double(double)>& f, double a,
                                         double b, int panels, double tol) {
  std::vector<QuadratureResult> parts(static_cast<std::size_t>(std::max(panels, 1)));
  const int count = static_cast<int>(parts.size());
  const double w = (b - a) / count;
  for (int i = 0; i < count; ++i) {
    const double lo = a + w * i;
    const double hi = (i + 1 == count) ? b : a + w * (i + 1);
    parts[i] = integrate_adaptive(f, lo, hi, tol / count);
  }
  return sum_panels(parts);
}

}  // namespace ultraseq::kernels
