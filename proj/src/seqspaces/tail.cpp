#include "ultraseq/tail.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "ultraseq/kernels.hpp"

namespace ultraseq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kFitWindows = 6;
constexpr double kFitTolerance = 1e-3;
constexpr double kModelTolerance = 1e-7;
constexpr double kSteadyRatio = 0.95;
// log-terms beyond these are treated as having left the double range
constexpr double kLogCeiling = 700.0;

std::vector<long> window_points(long lo, long hi, int samples) {
  std::vector<long> pts;
  const long size = hi - lo + 1;
  if (size <= samples) {
    for (long n = lo; n <= hi; ++n) pts.push_back(n);
    return pts;
  }
  const long pairs = std::max(2, samples / 2);
  for (long i = 0; i < pairs; ++i) {
    const long a = lo + i * (size - 2) / (pairs - 1);
    pts.push_back(a);
    pts.push_back(a + 1);
  }
  pts.push_back(hi);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

struct Fit {
  double intercept = 0.0;
  double residual = 0.0;
};

// Least squares y ~ A + B x (+ C x log x) with columns scaled to unit max.
std::optional<Fit> fit_tail(const std::vector<double>& x, const std::vector<double>& y, bool with_xlogx) {
  const int rows = static_cast<int>(x.size());
  const int cols = with_xlogx ? 3 : 2;
  if (rows < cols + 1) return std::nullopt;
  Eigen::MatrixXd a(rows, cols);
  Eigen::VectorXd b(rows);
  for (int i = 0; i < rows; ++i) {
    a(i, 0) = 1.0;
    a(i, 1) = x[i];
    if (with_xlogx) a(i, 2) = x[i] > 0 ? x[i] * std::log(x[i]) : 0.0;
    b(i) = y[i];
  }
  Eigen::VectorXd scale(cols);
  for (int j = 0; j < cols; ++j) {
    scale(j) = a.col(j).cwiseAbs().maxCoeff();
    if (scale(j) == 0.0) return std::nullopt;
    a.col(j) /= scale(j);
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (qr.rank() < cols) return std::nullopt;
  const Eigen::VectorXd coef = qr.solve(b);
  Fit fit;
  fit.intercept = coef(0) / scale(0);
  fit.residual = (a * coef - b).cwiseAbs().maxCoeff();
  return fit;
}

TailEstimate make(TailEstimate::Kind kind, std::string note) {
  TailEstimate t;
  t.kind = kind;
  t.note = std::move(note);
  if (kind == TailEstimate::Kind::zero) t.center = t.lo = t.hi = -kInf;
  if (kind == TailEstimate::Kind::divergent) t.center = t.lo = t.hi = kInf;
  return t;
}

}  // namespace

std::vector<Window> window_sups(const std::function<double(long)>& term, long n_min, long n_max,
                                int samples) {
  std::vector<Window> windows;
  std::vector<long> points;
  std::vector<std::size_t> starts;
  n_min = std::max(1L, n_min);
  for (long lo = 1; lo <= n_max; lo *= 2) {
    const long first = std::max(lo, n_min);
    const long last = std::min(2 * lo - 1, n_max);
    if (first > last) continue;
    starts.push_back(points.size());
    windows.push_back({first, last, -kInf, first});
    const auto pts = window_points(first, last, samples);
    points.insert(points.end(), pts.begin(), pts.end());
  }
  starts.push_back(points.size());
  std::vector<double> values(points.size());
  kernels::map_indices(points, term, values);
  for (std::size_t w = 0; w < windows.size(); ++w) {
    for (std::size_t i = starts[w]; i < starts[w + 1]; ++i) {
      if (values[i] > windows[w].sup) {
        windows[w].sup = values[i];
        windows[w].argmax = points[i];
      }
    }
  }
  return windows;
}

TailEstimate estimate_log_limsup(const std::function<double(long)>& log_term,
                                 const std::function<double(long)>& weight, long n_min, long n_max,
                                 int samples) {
  using Kind = TailEstimate::Kind;
  const auto windows = window_sups(log_term, n_min, n_max, samples);
  if (windows.empty()) return make(Kind::inconclusive, "empty index range");
  const double last = windows.back().sup;
  if (std::isnan(last)) return make(Kind::inconclusive, "sequence evaluates to NaN");
  if (last == -kInf) return make(Kind::zero, fmt::format("zero on the last window [{}, {}]", windows.back().first, windows.back().last));
  if (last > kLogCeiling) return make(Kind::divergent, fmt::format("r_n log f_n = {:.9g} at n = {}", last, windows.back().argmax));
  if (last < -kLogCeiling) return make(Kind::zero, fmt::format("r_n log f_n = {:.9g} at n = {}", last, windows.back().argmax));

  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& w : windows) {
    if (!std::isfinite(w.sup)) {
      xs.clear();
      ys.clear();
      continue;
    }
    xs.push_back(weight(w.argmax));
    ys.push_back(w.sup);
  }
  if (ys.size() < 4) return make(Kind::inconclusive, fmt::format("only {} usable tail windows below n = {}", ys.size(), n_max));

  const std::size_t k = std::min<std::size_t>(kFitWindows, ys.size());
  auto tail = [&](const std::vector<double>& v, std::size_t drop) {
    return std::vector<double>(v.end() - static_cast<long>(k + drop), v.end() - static_cast<long>(drop));
  };
  const auto x = tail(xs, 0);
  const auto y = tail(ys, 0);
  const auto f3 = fit_tail(x, y, true);
  const auto f2 = fit_tail(x, y, false);

  double scale_y = 1.0;
  for (double v : y) scale_y = std::max(scale_y, std::abs(v));
  const bool exact_model = f3 && f3->residual <= kModelTolerance * scale_y;

  // steady growth or decay of the window suprema: increments that do not shrink
  const std::size_t m = std::min<std::size_t>(4, ys.size() - 1);
  std::vector<double> d;
  for (std::size_t i = ys.size() - m; i < ys.size(); ++i) d.push_back(ys[i] - ys[i - 1]);
  const bool up = std::all_of(d.begin(), d.end(), [](double v) { return v > 0; });
  const bool down = std::all_of(d.begin(), d.end(), [](double v) { return v < 0; });
  const bool steady = std::abs(d.back()) >= kSteadyRatio * std::abs(d.front());
  if (!exact_model && steady && up) {
    return make(Kind::divergent, fmt::format("window suprema of r_n log f_n keep growing ({:.9g} at n = {})", last,
                                             windows.back().argmax));
  }
  if (!exact_model && steady && down) {
    return make(Kind::zero, fmt::format("window suprema of r_n log f_n keep falling ({:.9g} at n = {})", last,
                                        windows.back().argmax));
  }
  if (!f3 || !f2 || f3->residual > kFitTolerance * scale_y) {
    return make(Kind::inconclusive, fmt::format("tail has not stabilized by n = {} (fit residual {:.3g})", n_max,
                                                f3 ? f3->residual : kInf));
  }

  double lo = std::min(f3->intercept, f2->intercept);
  double hi = std::max(f3->intercept, f2->intercept);
  if (ys.size() > k) {
    if (auto shifted = fit_tail(tail(xs, 1), tail(ys, 1), true)) {
      lo = std::min(lo, shifted->intercept);
      hi = std::max(hi, shifted->intercept);
    }
  }
  const double pad = f3->residual + 1e-9;
  TailEstimate t;
  t.kind = Kind::converged;
  t.center = f3->intercept;
  t.lo = lo - pad;
  t.hi = hi + pad;
  t.note = fmt::format("fit over {} windows up to n = {} (last window sup {:.9g}, residual {:.2g})", k,
                       windows.back().last, last, f3->residual);
  return t;
}

namespace {

LimitZeroTest judge_zero(const std::vector<double>& sups, double tol, const std::string& where) {
  using Kind = LimitZeroTest::Kind;
  LimitZeroTest t;
  if (sups.empty()) {
    t.note = "no samples";
    return t;
  }
  t.last_sup = sups.back();
  const std::size_t from = sups.size() > 4 ? sups.size() - 4 : 0;
  // below the floor the values are rounding noise and need not be monotone
  const double floor = 1e-3 * tol;
  bool non_increasing = true;
  for (std::size_t i = from + 1; i < sups.size(); ++i) {
    if (sups[i] > floor && sups[i] > sups[i - 1] * (1 + 1e-9) + 1e-300) non_increasing = false;
  }
  if (std::isnan(t.last_sup)) {
    t.note = "NaN in tail";
  } else if (t.last_sup <= tol && non_increasing) {
    t.kind = Kind::yes;
    t.note = fmt::format("tail sup {:.9g} <= {:.3g} {}", t.last_sup, tol, where);
  } else if (t.last_sup > tol && t.last_sup >= 0.9 * sups[from]) {
    t.kind = Kind::no;
    t.note = fmt::format("tail sup {:.9g} > {:.3g} and not decreasing {}", t.last_sup, tol, where);
  } else {
    t.note = fmt::format("tail sup {:.9g} still moving {}", t.last_sup, where);
  }
  return t;
}

}  // namespace

LimitZeroTest tends_to_zero(const std::function<double(long)>& abs_term, long n_min, long n_max,
                            int samples, double tol) {
  const auto windows = window_sups(abs_term, n_min, n_max, samples);
  std::vector<double> sups;
  for (const auto& w : windows) sups.push_back(w.sup);
  return judge_zero(sups, tol, fmt::format("(windows up to n = {})", n_max));
}

LimitZeroTest tends_to_zero(const std::function<double(long)>& abs_term, const std::vector<long>& probes,
                            double tol) {
  std::vector<double> values(probes.size());
  kernels::map_indices(probes, abs_term, values);
  return judge_zero(values, tol, fmt::format("(probes up to n = {})", probes.empty() ? 0 : probes.back()));
}

}  // namespace ultraseq
