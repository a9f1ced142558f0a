#pragma once

// Sequences of smooth functions on the line: the seminorms p_nu, mollifier
// sequences phi_n = n phi(n .), moment classes, pairings with test functions
// and weak association of generalized functions.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ultraseq/gennum.hpp"
#include "ultraseq/seqspaces.hpp"

namespace ultraseq {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty() const { return !(lo < hi); }
  Interval intersect(const Interval& o) const { return {std::max(lo, o.lo), std::min(hi, o.hi)}; }
};

/// One smooth function given by its jet: out[k] = f^(k)(x), k < out.size().
struct SmoothFn {
  std::function<void(double, std::span<double>)> jet;
  int max_order = 0;
  std::optional<Interval> support{};
  std::string label;

  double operator()(double x, int alpha = 0) const;
};

SmoothFn sine();
/// c0 + c1 x + c2 x^2 + ...
SmoothFn polynomial(std::vector<double> coeffs);
/// exp(-1/(1 - y^2)) with y = (x - center)/width, unnormalized.
SmoothFn bump(double center = 0.0, double width = 1.0, int max_order = 12);

/// (f_n)_n with analytic derivatives up to max_order.
struct SmoothSeq {
  std::function<void(long, double, std::span<double>)> jet;
  int max_order = 0;
  /// Support of f_n when known (seminorm grids and quadrature stay inside it).
  std::function<std::optional<Interval>(long)> support{};
  /// Grid spacing that resolves f_n inside fine_region(n) (everywhere when
  /// no region is given); 2^-10 elsewhere.
  std::function<double(long)> spacing{};
  std::function<std::optional<Interval>(long)> fine_region{};
  std::string label;

  double value(long n, double x, int alpha = 0) const;
};

SmoothSeq constant_seq(const SmoothFn& f);
SmoothSeq zero_seq();
SmoothSeq sum(const SmoothSeq& f, const SmoothSeq& g);
SmoothSeq difference(const SmoothSeq& f, const SmoothSeq& g);
/// Leibniz rule.
SmoothSeq product(const SmoothSeq& f, const SmoothSeq& g);
/// c(n) f_n.
SmoothSeq scaled(const SmoothSeq& f, std::function<double(long)> c, std::string c_label);
SmoothSeq derivative(const SmoothSeq& f);
/// exp(f_n) by the jet recurrence g' = f' g.
SmoothSeq exp_seq(const SmoothSeq& f);
/// n -> f_{k n} (for example delta_{2n}).
SmoothSeq reindexed(const SmoothSeq& f, long k);

struct Mollifier {
  SmoothFn profile;  ///< normalized: integral 1, support [-1, 1]
  int moment_class = 0;
  std::string label;

  /// The standard bump scaled to integral 1 (class 1: odd moments vanish).
  static Mollifier standard(int max_order = 12);
  /// (1 + c x^2) bump with c chosen so that the second moment vanishes
  /// (orthogonalized against {x, x^2}); class >= 3.
  static Mollifier corrected(int max_order = 12);
  /// poly(x) * bump(x) normalized to integral 1; the class is computed.
  static Mollifier from_polynomial(std::vector<double> coeffs, int max_order = 12);
};

/// Largest q <= q_max with |int x^k phi| <= tol for 1 <= k <= q. Throws
/// std::invalid_argument when |int phi - 1| > tol.
int moment_class(const SmoothFn& phi, int q_max, double tol);

/// phi_n = n^{1+...}: the evaluator returns n^{1+alpha} phi^(alpha)(n x).
SmoothSeq mollify(const Mollifier& phi);
/// Value at one index, as a function.
SmoothFn mollify(const Mollifier& phi, long n);

struct SeminormSpec {
  int order = 0;
  /// Sup domain [-radius, radius]; negative selects order + 1.
  double radius = -1.0;
  /// Lattice spacing; 0 selects the sequence's own spacing.
  double h = 0.0;

  double effective_radius() const { return radius < 0 ? order + 1.0 : radius; }
};

/// max over alpha <= order and lattice points x of |f_n^(alpha)(x)|; a lower
/// bound of the true supremum. Throws std::invalid_argument if the order
/// exceeds f.max_order.
double seminorm(const SmoothSeq& f, long n, const SeminormSpec& spec);

struct FunOptions {
  long n_max = 1L << 14;
  int samples_per_window = 4;
};

/// Seminorm channel nu of f as a sampled sequence.
SeqRep seminorm_channel(const SmoothSeq& f, int nu, const FunOptions& opts = {});

/// One channel per nu <= nu_max, classified in the given family.
Classification classify_fun(const SmoothSeq& f, int nu_max, const WeightFamily& w, Mode mode,
                            const FunOptions& opts = {});

struct TestFunction {
  SmoothFn psi;
  Interval support;
  std::string label;
};

/// psi((x - center)/width) with the standard bump.
TestFunction test_bump(double center, double width);
/// The fixed probe set used for the "for all psi" quantifier.
const std::vector<TestFunction>& default_test_set();

/// Integral of f_n psi over the common support (tolerance 1e-9). Throws
/// std::runtime_error when quadrature does not converge.
double pairing(const SmoothSeq& f, long n, const TestFunction& psi);

struct FunAssocVerdict {
  Truth holds = Truth::unknown;
  std::vector<AssocVerdict> per_test;
  std::string format() const;
};

/// <f_n - g_n, psi> fed to the scalar association of the same kind, for every
/// psi in the probe set.
FunAssocVerdict weak_assoc_fun(const SmoothSeq& f, const SmoothSeq& g, const AssocKind& kind,
                               const std::vector<TestFunction>& tests = default_test_set(),
                               const SpacePtr& space = Space::colombeau(), const FunOptions& opts = {});

struct ExtractedEntry {
  std::string probe;
  int moment_class = 0;
  UltranormValue value;
  Truth in_f = Truth::unknown;  ///< [[.]] < N
  Truth in_k = Truth::unknown;  ///< [[.]] = 0
};

struct ExtractedReport {
  int nu = 0;
  int big_n = 0;
  std::vector<ExtractedEntry> entries;
  std::string format() const;
};

/// Membership of the extracted sequences (f_{phi_n})_n in F_{nu,N,phi} and
/// K_{nu,N,phi} for each probe phi (a finite probe of the intersection over
/// A_N). Throws std::invalid_argument for probes with moment class < N.
ExtractedReport extracted_membership(const std::function<SmoothSeq(const Mollifier&)>& family, int nu, int big_n,
                                     const std::vector<Mollifier>& probes, const FunOptions& opts = {});

}  // namespace ultraseq
