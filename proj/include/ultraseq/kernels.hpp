#pragma once

// Data-parallel inner loops. Each kernel has an OpenMP version and a serial
// reference with identical semantics; tests check they agree and
// bench/kernels_bench compares their speed.

#include <functional>
#include <span>
#include <vector>

namespace ultraseq::kernels {

/// Fills jet[0..order] with f(x), f'(x), ..., f^(order)(x).
using JetFn = std::function<void(double x, std::span<double> jet)>;

/// max over xs and 0 <= k <= order of |f^(k)(x)|. A NaN jet entry (overflow)
/// counts as +inf.
double grid_sup(const JetFn& f, int order, std::span<const double> xs);
double grid_sup_serial(const JetFn& f, int order, std::span<const double> xs);

/// out[i] = fn(indices[i]).
void map_indices(std::span<const long> indices, const std::function<double(long)>& fn,
                 std::span<double> out);
void map_indices_serial(std::span<const long> indices, const std::function<double(long)>& fn,
                        std::span<double> out);

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

/// Splits [a, b] into equal panels and integrates each with adaptive
/// Gauss-Kronrod (7/15). Panel results are summed in panel order, so the
/// parallel and serial versions return bit-identical values.
QuadratureResult integrate_panels(const std::function<double(double)>& f, double a, double b,
                                  int panels, double tol);
QuadratureResult integrate_panels_serial(const std::function<double(double)>& f, double a,
                                         double b, int panels, double tol);

/// Adaptive Gauss-Kronrod on one interval.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double tol, int max_depth = 40);

}  // namespace ultraseq::kernels
