#pragma once

// Tail estimators for sampled sequences: limsup of r_n log f_n from dyadic
// window suprema, and a "tends to zero" test for scalar sequences.

#include <functional>
#include <string>
#include <vector>

namespace ultraseq {

struct TailEstimate {
  enum class Kind { converged, zero, divergent, inconclusive };
  Kind kind = Kind::inconclusive;
  double center = 0.0;  ///< estimated limit of log-terms (converged only)
  double lo = 0.0;
  double hi = 0.0;
  std::string note;
};

struct Window {
  long first = 0;
  long last = 0;
  double sup = 0.0;   ///< window supremum of the sampled values
  long argmax = 0;
};

/// Dyadic windows [2^k, 2^{k+1}) clipped to [n_min, n_max] with their suprema
/// over at most `samples` points each (consecutive pairs, so both parities
/// are seen).
std::vector<Window> window_sups(const std::function<double(long)>& term, long n_min, long n_max,
                                int samples);

/// Estimates limsup_n y_n where y_n = r_n log f_n is supplied as `log_term`.
/// The last windows' suprema are fitted against y = A + B r + C r log r
/// (and the two-parameter model without r log r); A is the estimate and the
/// spread of the fits plus the residual forms the band.
TailEstimate estimate_log_limsup(const std::function<double(long)>& log_term,
                                 const std::function<double(long)>& weight, long n_min, long n_max,
                                 int samples);

struct LimitZeroTest {
  enum class Kind { yes, no, unknown };
  Kind kind = Kind::unknown;
  double last_sup = 0.0;
  std::string note;
};

/// |c_n| -> 0 judged on the last windows at tolerance `tol`: yes when the
/// final window supremum is below tol and the tail does not increase.
LimitZeroTest tends_to_zero(const std::function<double(long)>& abs_term, long n_min, long n_max,
                            int samples, double tol);

/// Same test on an explicit list of probe indices (ascending).
LimitZeroTest tends_to_zero(const std::function<double(long)>& abs_term, const std::vector<long>& probes,
                            double tol);

}  // namespace ultraseq
