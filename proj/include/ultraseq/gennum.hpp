#pragma once

// Generalized numbers C_r = F/K: representative-wise arithmetic, zero test
// modulo the ideal, and the association relations (strong, weak, s-dual,
// weak-s and the general J,X scheme).

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ultraseq/seqspaces.hpp"

namespace ultraseq {

/// Weight family + classification mode shared by the elements of one ring.
class Space {
 public:
  Space(WeightFamily family, Mode mode, ClassifyOptions opts = {});

  static std::shared_ptr<const Space> colombeau();

  const WeightFamily& family() const { return family_; }
  Mode mode() const { return mode_; }
  const ClassifyOptions& options() const { return opts_; }
  /// The weight of a single-member family; throws std::invalid_argument for
  /// proper families (ultranorm thresholds need one weight).
  WeightSeq weight() const;

 private:
  WeightFamily family_;
  Mode mode_;
  ClassifyOptions opts_;
};

using SpacePtr = std::shared_ptr<const Space>;

class GenNumber {
 public:
  /// sign * magnitude. Throws std::invalid_argument if the magnitude is not
  /// moderate in `space`.
  static GenNumber symbolic(GrowthExpr magnitude, int sign, SpacePtr space);
  static GenNumber symbolic(std::string_view magnitude, SpacePtr space, int sign = 1);
  /// Complex sampled representative on [n_min, n_max]. Rejected only when
  /// its magnitude is shown divergent.
  static GenNumber sampled(std::function<std::complex<double>(long)> eval, long n_min, long n_max,
                           SpacePtr space, std::string label, int samples_per_window = 256);

  bool is_symbolic() const { return !sampled_; }
  /// Magnitude expression (symbolic tier only).
  const GrowthExpr* magnitude_expr() const { return sampled_ ? nullptr : &magnitude_; }
  int sign() const { return sign_; }
  const SpacePtr& space() const { return space_; }
  const std::string& label() const { return label_; }

  std::complex<double> value(long n) const;
  double log_abs(long n) const;
  /// |x_n| as a seminorm channel; a sampled sum whose magnitude is
  /// asymptotic to a growth expression reports that expression (same
  /// ultranorm for every weight).
  SeqRep magnitude() const;
  long n_min() const;
  long n_max() const;

 private:
  struct Sampled {
    std::function<std::complex<double>(long)> eval;
    long n_min;
    long n_max;
    int samples;
    /// Growth expression with |eval(n)| / equivalent(n) -> 1, when known.
    std::optional<GrowthExpr> equivalent{};
  };

  GenNumber() = default;
  static GenNumber raw_symbolic(GrowthExpr magnitude, int sign, SpacePtr space);
  static GenNumber raw_sampled(Sampled s, SpacePtr space, std::string label);

  GrowthExpr magnitude_;
  int sign_ = 1;
  std::shared_ptr<const Sampled> sampled_;
  SpacePtr space_;
  std::string label_;

  friend GenNumber add(const GenNumber& a, const GenNumber& b);
  friend GenNumber neg(const GenNumber& a);
  friend GenNumber mul(const GenNumber& a, const GenNumber& b);
};

/// Exact on the symbolic tier when the sum stays in the fragment (equal
/// signs, cancellation of equal magnitudes, a Zero operand); otherwise the
/// result is the sampled sum. Opposite-sign sums without leading-order
/// cancellation keep the asymptotic magnitude for classification. Throws std::invalid_argument on space mismatch.
GenNumber add(const GenNumber& a, const GenNumber& b);
GenNumber neg(const GenNumber& a);
GenNumber sub(const GenNumber& a, const GenNumber& b);
GenNumber mul(const GenNumber& a, const GenNumber& b);

struct AssocVerdict {
  Truth holds = Truth::unknown;
  /// Strict threshold met with equality (decided "no").
  bool boundary = false;
  std::string kind;
  std::vector<std::string> witness;

  std::string format() const;
};

/// Decidable predicate defining an additive subgroup J of F containing K.
struct JPredicate {
  std::string name;
  std::function<AssocVerdict(const GenNumber&)> test;
};

JPredicate null_sequences();
/// { f : [[f]] < e^{-s} }.
JPredicate ball(double s);
JPredicate bounded_sequences();

struct AssocKind {
  enum class Tag { strong, weak, dual, weak_s, custom };

  Tag tag = Tag::weak;
  double s = 0.0;
  JPredicate j{};
  std::vector<GenNumber> x{};

  static AssocKind strong_s(double s) { return {Tag::strong, s}; }
  static AssocKind weak() { return {Tag::weak, 0.0}; }
  static AssocKind s_dual(double s) { return {Tag::dual, s}; }
  static AssocKind weak_s(double s) { return {Tag::weak_s, s}; }
  static AssocKind custom(JPredicate j, std::vector<GenNumber> x) {
    return {Tag::custom, 0.0, std::move(j), std::move(x)};
  }

  std::string name() const;
};

/// [(e^{s/r_n})_n] for s = 0..s_max (n^s in the Colombeau ring).
std::vector<GenNumber> x_powers(const SpacePtr& space, int s_max = 32);
GenNumber exp_s_over_r(const SpacePtr& space, double s);

/// a = 0 in F/K, i.e. the representative is negligible.
AssocVerdict is_zero(const GenNumber& a);

/// `difference` optionally supplies |a - b| (needed for exactness when the
/// symbolic difference leaves the fragment).
AssocVerdict associate(const GenNumber& a, const GenNumber& b, const AssocKind& kind,
                       const std::optional<SeqRep>& difference = std::nullopt);

struct WellDefinedReport {
  bool pass = true;
  int ideal_checked = 0;
  int pairs_checked = 0;
  std::string counterexample;
  std::string format() const;
};

/// Samples ideal elements and J-members from the random corpus and checks
/// K ⊆ J and J + J ⊆ J on them.
WellDefinedReport jx_well_defined(const JPredicate& j, const SpacePtr& space, int samples = 64,
                                  unsigned long long seed = 1);

}  // namespace ultraseq
