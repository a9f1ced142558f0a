#pragma once

// Moderate and compatible scalar maps for a weight family, continuously
// temperate maps on function sequences, and their componentwise extension
// with the (F1)/(F2) checks.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ultraseq/genfun.hpp"
#include "ultraseq/weights.hpp"

namespace ultraseq {

/// g : R+ -> R+ handled through L(t) = log g(e^t), so that g(x^{1/r}) with
/// huge x^{1/r} stays representable.
struct ScalarMap {
  enum class Tag { power, exp, log1p, poly, inv_log, composition, black_box };

  Tag tag = Tag::black_box;
  double k = 1.0;                  ///< power exponent
  std::vector<double> coeffs{};    ///< poly coefficients (nonnegative)
  std::function<double(double)> log_of_exp;
  bool monotone = true;
  std::string label;

  double operator()(double x) const;

  static ScalarMap power(double k);
  static ScalarMap identity() { return power(1.0); }
  static ScalarMap exp();
  static ScalarMap log1p();
  /// c0 + c1 x + ...; affine(a, b) = poly({b, a}).
  static ScalarMap poly(std::vector<double> coeffs);
  static ScalarMap affine(double a, double b) { return poly({b, a}); }
  /// 1/|log x| for x < 1/e and 1 beyond: increasing, 0 at 0+.
  static ScalarMap inv_log();
  /// outer(inner(x)).
  static ScalarMap compose(const ScalarMap& outer, const ScalarMap& inner);
  static ScalarMap black_box(std::function<double(double)> g, std::string label);
};

/// Spot check of monotonicity on a log grid in [1e-8, 1e8].
bool check_monotone(const ScalarMap& g, std::string* witness = nullptr);

struct TemperateWitness {
  int m = 0;
  int big_m = 0;
  double x = 0.0;
  long n_first = 0;
  long n_last = 0;
  /// log of the offending value: r^M_n log g(x^{1/r^m_n}) maximized over the window.
  double log_value = 0.0;
  /// The violated bound: log_value > bound (moderate) or >= bound (compatible, log eps).
  double bound = 0.0;
};

struct TemperateCertificate {
  enum class Status { certified, refuted, inconclusive };
  enum class Role { moderate, compatible };

  Status status = Status::inconclusive;
  Role role = Role::moderate;
  Direction family_case = Direction::single;
  std::string map;
  std::string family;
  bool exact = false;
  /// Established (m, M) pairs in quantifier order.
  std::vector<std::pair<int, int>> trace;
  std::optional<TemperateWitness> witness;
  std::string note;
  int m_bound = 16;
  long n_max = 1L << 20;

  std::string format() const;
  std::string to_json() const;
};

std::string to_string(TemperateCertificate::Status s);

struct TemperateOptions {
  int m_max = 16;
  long n_max = 1L << 20;
  /// Skip the exact tier (numeric search only).
  bool numeric_only = false;
};

/// Case II (r^{m+1} <= r^m): for all m exists M with sup_n g(x^{1/r^m_n})^{r^M_n} < inf
/// for every x; case I swaps the quantifiers. Throws std::invalid_argument for
/// families with Egorov steps.
TemperateCertificate check_moderate(const ScalarMap& g, const WeightFamily& w, const TemperateOptions& opts = {});

/// Case II: for all M exists m with h(x^{1/r^m_n})^{r^M_n} -> 0 as x -> 0
/// uniformly in n; case I swaps the quantifiers.
TemperateCertificate check_compatible(const ScalarMap& h, const WeightFamily& w, const TemperateOptions& opts = {});

/// Re-evaluates the witness window; true when it still shows the violation.
bool replay(const TemperateCertificate& c, const ScalarMap& g, const WeightFamily& w);

/// phi acting on function sequences componentwise, with its seminorm pairing
/// q = p_nu -> p_(q) = p_weight(nu) * p_{p_order(nu)} and the declared bounds
/// q(phi(f)) <= g_alpha(p(f)), q(phi(f + k) - phi(f)) <= g_beta(p(f)) h(p(k)).
struct FunMap {
  std::string name;
  std::function<SmoothSeq(const SmoothSeq&)> apply;
  /// phi(f + k) - phi(f), written without cancellation.
  std::function<SmoothSeq(const SmoothSeq&, const SmoothSeq&)> increment;
  std::function<int(int)> p_order;
  std::function<double(int)> p_weight;
  ScalarMap g_alpha;
  ScalarMap g_beta;
  ScalarMap h;

  static FunMap identity();
  /// f^2 with p_(q) = 2^nu p_nu, g_alpha = x^2, g_beta = 2x + 1, h = y + y^2.
  static FunMap square();
  /// d/dx with p_(q) = p_{nu+1}, g_alpha = x, g_beta = 1, h = y.
  static FunMap derivative();
  /// exp(f) with the candidate bound g = x^4 (not a valid bound).
  static FunMap exponential();
};

/// Random function sequences for the (alpha)/(beta) spot checks: scaled sines,
/// polynomials, bumps, mollifier sequences.
std::vector<SmoothSeq> function_corpus(int count, unsigned long long seed);

struct TemperateReport {
  TemperateCertificate::Status status = TemperateCertificate::Status::inconclusive;
  std::string map;
  std::vector<TemperateCertificate> bounds;  ///< g_alpha, g_beta moderate; h compatible
  int alpha_checks = 0;
  int beta_checks = 0;
  std::string witness;
  std::string note;
  std::string format() const;
};

struct TemperateCheckOptions {
  int nu_max = 2;
  int pairs = 50;
  unsigned long long seed = 1;
  std::vector<long> indices{1, 3, 8, 32};
  TemperateOptions scalar{};
};

TemperateReport check_temperate(const FunMap& phi, const WeightFamily& w, const TemperateCheckOptions& opts = {});

struct ExtendResult {
  SmoothSeq image;
  Classification classification;
};

/// (phi(f_n))_n. Requires a certified report; throws std::runtime_error when
/// the image fails the moderateness probe.
ExtendResult extend(const FunMap& phi, const TemperateReport& certificate, const SmoothSeq& f, const WeightFamily& w,
                    int nu_max = 2, const FunOptions& opts = {});

struct F2Report {
  Truth pass = Truth::unknown;
  Classification classification;
  std::string format() const;
};

/// Classifies phi(f + j) - phi(f); passes when negligible. Throws
/// std::invalid_argument when j is not shown negligible.
F2Report verify_f2(const FunMap& phi, const SmoothSeq& f, const SmoothSeq& j, const WeightFamily& w, int nu_max = 2,
                   const FunOptions& opts = {});

}  // namespace ultraseq
