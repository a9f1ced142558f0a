#pragma once

// Symbolic asymptotic growth expressions for eventually-positive sequences
// n -> value, with an exact dominance order and exact limits of r_n * log f(n).

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ultraseq {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Well-formed input whose meaning falls outside the representable fragment
/// (negative coefficients, non-growing exp arguments, pow of a sum, ...).
class SemanticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One factor of a logarithm: n^d (log n)^e, log log n, log log log n or 1.
/// Power monomials always satisfy d > 0, or d == 0 and e > 0.
struct LogMonomial {
  enum class Kind { power, loglog, logloglog, constant };

  Kind kind = Kind::constant;
  double n_power = 0.0;
  double log_power = 0.0;

  static LogMonomial power(double d, double e) { return {Kind::power, d, e}; }
  static LogMonomial loglog() { return {Kind::loglog, 0.0, 0.0}; }
  static LogMonomial logloglog() { return {Kind::logloglog, 0.0, 0.0}; }
  static LogMonomial one() { return {Kind::constant, 0.0, 0.0}; }

  double value(double n) const;
  friend bool operator==(const LogMonomial&, const LogMonomial&) = default;
};

/// Asymptotic order of two log monomials: -1 if a = o(b), +1 if b = o(a), 0 if equal.
int compare_monomials(const LogMonomial& a, const LogMonomial& b);

/// Signed linear combination of log monomials, sorted by descending growth,
/// without zero coefficients.
class LogCombo {
 public:
  using Entry = std::pair<LogMonomial, double>;

  LogCombo() = default;
  void add(const LogMonomial& m, double coeff);
  LogCombo scaled(double s) const;
  LogCombo operator+(const LogCombo& other) const;
  LogCombo operator-(const LogCombo& other) const;

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  /// Coefficient of the fastest-growing monomial (0 if empty).
  const Entry* dominant() const { return entries_.empty() ? nullptr : &entries_.front(); }
  /// Sign of the combination for large n: -1, 0, +1.
  int eventual_sign() const;
  double value(double n) const;
  std::string format() const;

  friend bool operator==(const LogCombo&, const LogCombo&) = default;

 private:
  std::vector<Entry> entries_;
};

/// c * n^d * (log n)^e inside an exp(...) factor.
struct ExpMonomial {
  double coeff = 0.0;
  double n_power = 0.0;
  double log_power = 0.0;
  friend bool operator==(const ExpMonomial&, const ExpMonomial&) = default;
};

/// coeff * n^pow_n * (log n)^pow_log * (log log n)^pow_loglog * exp(sum of exp_part).
struct GrowthTerm {
  double coeff = 1.0;
  double pow_n = 0.0;
  double pow_log = 0.0;
  double pow_loglog = 0.0;
  std::vector<ExpMonomial> exp_part;

  /// Exact logarithm as a log combination.
  LogCombo log() const;
  double log_value(double n) const;
  bool same_signature(const GrowthTerm& other) const;
  /// Normalizes exp_part (sort, merge, fold exp(c log n) into pow_n). Throws
  /// SemanticError for monomials that do not tend to infinity.
  void normalize();

  friend bool operator==(const GrowthTerm&, const GrowthTerm&) = default;
};

/// -1 if a = o(b), +1 if b = o(a), 0 if a and b have the same signature.
int compare_terms(const GrowthTerm& a, const GrowthTerm& b);

/// Limit of a single term as n -> infinity: 0, coeff, or +inf.
double term_limit(const GrowthTerm& t);

enum class Parity { even, odd };

/// A normalized finite sum of growth terms, optionally parity-modulated
/// (alt(e1, e2) takes e1 on even n and e2 on odd n). The empty sum is Zero.
class GrowthExpr {
 public:
  using Terms = std::vector<GrowthTerm>;

  GrowthExpr() = default;
  explicit GrowthExpr(Terms terms);

  static GrowthExpr zero() { return {}; }
  static GrowthExpr constant(double c);
  static GrowthExpr term(GrowthTerm t);
  static GrowthExpr n_power(double d, double coeff = 1.0);
  static GrowthExpr alt(const GrowthExpr& even, const GrowthExpr& odd);

  bool is_zero() const { return even_.empty() && odd_.empty(); }
  bool modulated() const { return modulated_; }
  /// Terms of an unmodulated expression. Throws std::logic_error if modulated.
  const Terms& terms() const;
  const Terms& branch(Parity p) const { return p == Parity::even ? even_ : odd_; }
  const GrowthTerm* dominant() const;

  /// Smallest index from which every term is defined and positive.
  long threshold() const;
  /// log f(n); -inf where the branch is Zero.
  double log_value(long n) const;
  double value(long n) const;

  std::string format() const;

  friend bool operator==(const GrowthExpr&, const GrowthExpr&) = default;

 private:
  static void normalize(Terms& terms);
  GrowthExpr(Terms even, Terms odd);

  Terms even_;
  Terms odd_;
  bool modulated_ = false;

  friend GrowthExpr add(const GrowthExpr& a, const GrowthExpr& b);
  friend GrowthExpr mul(const GrowthExpr& a, const GrowthExpr& b);
  friend GrowthExpr pow(const GrowthExpr& a, double s);
};

GrowthExpr add(const GrowthExpr& a, const GrowthExpr& b);
GrowthExpr mul(const GrowthExpr& a, const GrowthExpr& b);
GrowthExpr pow(const GrowthExpr& a, double s);
inline GrowthExpr scale(const GrowthExpr& a, double c) { return mul(a, GrowthExpr::constant(c)); }

/// exp(factor * x) when every term of x is a pure log monomial
/// (c * n^d * (log n)^e); nullopt otherwise.
std::optional<GrowthExpr> exp_of(const GrowthExpr& x, double factor = 1.0);

/// Converts a combination with positive coefficients into a growth expression
/// (log log log n has no term representation, so it yields nullopt).
std::optional<GrowthExpr> to_growth(const LogCombo& c);

enum class Order { less, same, greater };

struct Dominance {
  Order order = Order::same;
  /// lim a/b when order == same.
  double ratio = 1.0;
};

/// Dominance of unmodulated a against b; throws std::invalid_argument on
/// modulated input. Zero is below every nonzero expression; Zero vs Zero is
/// reported as same order with ratio 1.
Dominance compare(const GrowthExpr& a, const GrowthExpr& b);

/// Logarithm of each parity branch; nullopt marks a Zero branch (log = -inf).
struct LogExpr {
  std::optional<LogCombo> even;
  std::optional<LogCombo> odd;
  bool modulated = false;
};

/// Log of the dominant term on each branch (exact up to o(1)). Throws
/// SemanticError on Zero.
LogExpr log_expr(const GrowthExpr& a);
LogExpr log_expr_plain(const LogCombo& c);

/// Limit (or parity-branch limits) of r_n * L(n).
struct LimitValue {
  double lo = 0.0;
  double hi = 0.0;
  bool oscillating() const { return lo != hi; }
  double limsup() const { return hi; }
};

LimitValue limit_of_product(const GrowthExpr& r, const LogExpr& log_f);

GrowthExpr parse(std::string_view text);

}  // namespace ultraseq
