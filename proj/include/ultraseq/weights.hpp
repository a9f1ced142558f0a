#pragma once

// Weight sequences r (positive, decreasing to zero), monotone families
// (r^m)_m, and the translation of asymptotic scales into weight families.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ultraseq/asymptotics.hpp"

namespace ultraseq {

class WeightSeq {
 public:
  struct Symbolic {
    GrowthExpr expr;
  };
  /// r_n = 1 for n <= m, 0 for n > m, read with the convention 0^0 = 0.
  struct EgorovStep {
    int m;
  };
  struct Sampled {
    std::function<double(long)> eval;
    long first_index = 1;
  };

  static WeightSeq symbolic(GrowthExpr expr, std::string description = {});
  static WeightSeq egorov_step(int m);
  static WeightSeq sampled(std::function<double(long)> eval, std::string description,
                           long first_index = 1);

  double value(long n) const;
  /// First index where the weight is defined and positive (n >= 2 for 1/log n).
  long first_index() const;
  const std::string& description() const { return description_; }

  const GrowthExpr* expr() const { return std::get_if<Symbolic>(&kind_) ? &std::get<Symbolic>(kind_).expr : nullptr; }
  std::optional<int> egorov_m() const;
  bool is_sampled() const { return std::holds_alternative<Sampled>(kind_); }
  /// True when 0^0 is read as 0 (Egorov steps only).
  bool zero_to_zero_is_zero() const { return std::holds_alternative<EgorovStep>(kind_); }

  /// For symbolic weights: r decreases to 0 (dominance against 1), positive on
  /// probes, non-increasing on consecutive probe pairs.
  bool validate(std::string* why = nullptr) const;

 private:
  using Kind = std::variant<Symbolic, EgorovStep, Sampled>;
  WeightSeq(Kind k, std::string d) : kind_(std::move(k)), description_(std::move(d)) {}
  Kind kind_;
  std::string description_;
};

/// Monotonicity of a family in its index m.
enum class Direction {
  single,
  decreasing,  ///< r^{m+1} <= r^m: F is the union, K the intersection
  increasing,  ///< r^{m+1} >= r^m: F is the intersection, K the union
};

std::string to_string(Direction d);

class WeightFamily {
 public:
  WeightFamily(std::string name, Direction direction, int m_lo, int m_hi,
               std::function<WeightSeq(int)> member, bool unit_ball = false);

  static WeightFamily single(std::string name, WeightSeq r, bool unit_ball = false);

  const std::string& name() const { return name_; }
  Direction direction() const { return direction_; }
  int m_lo() const { return m_lo_; }
  int m_hi() const { return m_hi_; }
  WeightSeq member(int m) const { return member_(m); }
  /// Members m_lo..min(m_hi, bound) (the single member for single families).
  std::vector<int> indices(int bound) const;
  /// Infra-exponential style: classify with <= 1 / < 1 instead of < inf / = 0.
  bool unit_ball() const { return unit_ball_; }

 private:
  std::string name_;
  Direction direction_;
  int m_lo_;
  int m_hi_;
  std::function<WeightSeq(int)> member_;
  bool unit_ball_;
};

/// Pointwise check of the declared direction on consecutive members.
struct DirectionCheck {
  bool holds = true;
  std::string witness;
};
DirectionCheck verify_direction(const WeightFamily& family, const std::vector<long>& probes = {2, 10, 100, 10000, 1000000},
                                int bound = 16);

const std::vector<long>& default_probes();

struct CatalogParams {
  int m_lo = 0;  ///< 0 selects the entry's default
  int m_hi = 0;
  std::vector<GrowthExpr> custom;
};

/// Catalog entries: colombeau, colombeau-scale (1/(m log n)), ultra, egorov, infra-exponential, custom,
/// exponential (iterated-exp scale, sampled only). Throws std::invalid_argument
/// for unknown names or parameters violating monotonicity.
WeightFamily catalog(const std::string& name, const CatalogParams& params = {});

/// An asymptotic scale (a_m)_{m in Z}, each a_m a growth expression in n.
class AsymptoticScale {
 public:
  AsymptoticScale(std::string name, std::function<GrowthExpr(int)> member)
      : name_(std::move(name)), member_(std::move(member)) {}
  /// a_m = base^m.
  static AsymptoticScale geometric(const GrowthExpr& base);

  const std::string& name() const { return name_; }
  GrowthExpr member(int m) const { return member_(m); }

 private:
  std::string name_;
  std::function<GrowthExpr(int)> member_;
};

struct ScaleAxiomReport {
  struct Entry {
    int m = 0;
    bool decreasing = false;   ///< a_{m+1} = o(a_m)
    bool reciprocal = false;   ///< a_{-m} = 1/a_m
    std::optional<int> square_witness;  ///< smallest M with a_M = o(a_m^2)
  };
  std::vector<Entry> entries;
  int search_limit = 0;
  bool all_pass() const;
  std::string format() const;
};

ScaleAxiomReport verify_scale_axioms(const AsymptoticScale& a, const std::vector<int>& probe,
                                     int search_limit = 64);

/// r^m = 1/|log a_m| for m in [1, m_hi]. Members are exact when |log a_m|
/// is a single term, otherwise the dominant part is used (same ultranorms).
/// Throws std::invalid_argument when log a_m does not tend to infinity.
WeightFamily scale_to_weights(const AsymptoticScale& a, int m_hi = 16);

}  // namespace ultraseq
