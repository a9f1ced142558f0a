#pragma once

// Ultranorms [[f]]_{p,r} = limsup p(f_n)^{r_n}, ultrapseudometrics, and
// classification of sequences as moderate (F) or negligible (K).

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ultraseq/asymptotics.hpp"
#include "ultraseq/weights.hpp"

namespace ultraseq {

/// A nonnegative sequence known on [n_min, n_max] through an evaluator.
struct SampledSeq {
  std::function<double(long)> eval;
  long n_min = 1;
  long n_max = 1000000;
  /// Points evaluated per dyadic window (whole window when it is smaller).
  int samples_per_window = 256;
  /// Optional log f_n for sequences outside the double range.
  std::function<double(long)> log_eval{};

  double log_at(long n) const { return log_eval ? log_eval(n) : std::log(eval(n)); }
};

/// One seminorm channel n -> p(f_n), symbolic (exact) or sampled (estimated).
class SeqRep {
 public:
  static SeqRep symbolic(GrowthExpr e, std::string label = {});
  static SeqRep sampled(SampledSeq s, std::string label);
  static SeqRep sampled(std::function<double(long)> eval, long n_min, long n_max, std::string label,
                        int samples_per_window = 256);
  /// Sampled from log f_n; value(n) is exp of it.
  static SeqRep sampled_log(std::function<double(long)> log_eval, long n_min, long n_max, std::string label,
                            int samples_per_window = 256);
  /// Sampled view of a symbolic expression (log-domain evaluation).
  static SeqRep sampled_from(const GrowthExpr& e, long n_max, int samples_per_window = 256);

  bool is_symbolic() const { return std::holds_alternative<GrowthExpr>(rep_); }
  const GrowthExpr* expr() const { return std::get_if<GrowthExpr>(&rep_); }
  const SampledSeq* samples() const { return std::get_if<SampledSeq>(&rep_); }
  const std::string& label() const { return label_; }

  double value(long n) const;
  double log_value(long n) const;
  /// Sampled view; symbolic expressions are evaluated in the log domain.
  SampledSeq as_sampled(long n_max) const;

 private:
  using Rep = std::variant<GrowthExpr, SampledSeq>;
  SeqRep(Rep r, std::string label) : rep_(std::move(r)), label_(std::move(label)) {}
  Rep rep_;
  std::string label_;
};

struct Band {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

struct UltranormValue {
  enum class Kind { exact, estimated, inconclusive };

  Kind kind = Kind::exact;
  /// limsup of r_n log p(f_n); the ultranorm is exp of it.
  double log_value = 0.0;
  double value = 1.0;
  /// Estimated tier only: band in value space.
  Band band{};
  std::string witness;

  static UltranormValue exact(double log_value, std::string witness);
  static UltranormValue estimated(double log_center, double log_lo, double log_hi, std::string witness);
  static UltranormValue inconclusive(std::string why);

  bool decided() const { return kind != Kind::inconclusive; }
  bool is_zero() const { return decided() && log_value == -INFINITY; }
  bool is_infinite() const { return decided() && log_value == INFINITY; }
  std::string format() const;
  /// format() followed by the witness.
  std::string describe() const;
};

struct TailOptions {
  /// Upper index used when a symbolic sequence meets a sampled weight.
  long n_max = 1000000;
  int samples_per_window = 256;
};

UltranormValue ultranorm(const SeqRep& f, const WeightSeq& r, const TailOptions& opts = {});

/// d_{p,r}(f, g) = [[f - g]]_{p,r}. Symbolic inputs need the caller to supply
/// |f - g| (unless f == g); sampled inputs use |f_n - g_n|.
UltranormValue pseudometric(const SeqRep& f, const SeqRep& g, const WeightSeq& r,
                            const std::optional<SeqRep>& difference = std::nullopt,
                            const TailOptions& opts = {});

enum class Mode { standard, unit_ball };
enum class Truth { no, yes, unknown };
enum class Verdict { negligible, moderate, boundary, divergent, inconclusive };

std::string to_string(Mode m);
std::string to_string(Truth t);
std::string to_string(Verdict v);
Truth truth_and(Truth a, Truth b);
Truth truth_or(Truth a, Truth b);
Truth truth_not(Truth a);
inline Truth truth_of(bool b) { return b ? Truth::yes : Truth::no; }

Mode mode_for(const WeightFamily& w);

struct Classification {
  struct Detail {
    int m = 0;
    int channel = 0;
    UltranormValue value;
  };

  std::string family;
  Verdict verdict = Verdict::inconclusive;
  Truth moderate = Truth::unknown;
  Truth negligible = Truth::unknown;
  Mode mode = Mode::standard;
  Direction direction = Direction::single;
  int m_bound = 0;
  std::vector<Detail> details;

  std::string format() const;
};

using Bundle = std::vector<SeqRep>;

struct ClassifyOptions {
  int m_max = 16;
  TailOptions tail{};
};

/// Membership in F and K for a bundle of seminorm channels. Family
/// quantifiers over m are bounded by m_max. Throws std::invalid_argument on
/// an empty bundle.
Classification classify(const Bundle& f, const WeightFamily& w, Mode mode,
                        const ClassifyOptions& opts = {});
inline Classification classify(const SeqRep& f, const WeightFamily& w, Mode mode,
                               const ClassifyOptions& opts = {}) {
  return classify(Bundle{f}, w, mode, opts);
}

/// Membership in the single-member sets F_m and K_m.
struct MemberTruth {
  Truth in_f = Truth::unknown;
  Truth in_k = Truth::unknown;
};
MemberTruth member_truth(const std::vector<UltranormValue>& channels, Mode mode);

struct IdealCheck {
  bool pass = false;
  bool premise = false;  ///< k negligible and f moderate
  Classification k;
  Classification f;
  Classification product;
  std::string format() const;
};

/// k negligible and f moderate imply k*f negligible; `product` is the
/// caller-supplied per-channel representation of k*f.
IdealCheck ideal_check(const Bundle& k, const Bundle& f, const Bundle& product, const WeightFamily& w,
                       Mode mode, const ClassifyOptions& opts = {});

}  // namespace ultraseq
