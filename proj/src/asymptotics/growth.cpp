#include "ultraseq/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace ultraseq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int kind_rank(LogMonomial::Kind k) {
  switch (k) {
    case LogMonomial::Kind::power: return 0;
    case LogMonomial::Kind::loglog: return 1;
    case LogMonomial::Kind::logloglog: return 2;
    case LogMonomial::Kind::constant: return 3;
  }
  return 3;
}

int sign_of(double x) { return (x > 0) - (x < 0); }

std::string num(double x) { return fmt::format("{}", x); }

std::string power_factor(std::string_view base, double exponent) {
  if (exponent == 1.0) return std::string(base);
  return fmt::format("{}^{}", base, exponent);
}

bool is_nonneg_integer(double s) { return s >= 0 && std::floor(s) == s && s < 64; }

}  // namespace

// ---------------------------------------------------------------- monomials

double LogMonomial::value(double n) const {
  switch (kind) {
    case Kind::power: {
      double v = n_power * std::log(n);
      if (log_power != 0.0) v += log_power * std::log(std::log(n));
      return std::exp(v);
    }
    case Kind::loglog: return std::log(std::log(n));
    case Kind::logloglog: return std::log(std::log(std::log(n)));
    case Kind::constant: return 1.0;
  }
  return 1.0;
}

int compare_monomials(const LogMonomial& a, const LogMonomial& b) {
  const int ra = kind_rank(a.kind);
  const int rb = kind_rank(b.kind);
  if (ra != rb) return ra < rb ? 1 : -1;
  if (a.kind != LogMonomial::Kind::power) return 0;
  if (a.n_power != b.n_power) return a.n_power > b.n_power ? 1 : -1;
  if (a.log_power != b.log_power) return a.log_power > b.log_power ? 1 : -1;
  return 0;
}

void LogCombo::add(const LogMonomial& m, double coeff) {
  if (coeff == 0.0) return;
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const Entry& e) { return compare_monomials(e.first, m) <= 0; });
  if (it != entries_.end() && compare_monomials(it->first, m) == 0) {
    it->second += coeff;
    if (it->second == 0.0) entries_.erase(it);
    return;
  }
  entries_.insert(it, {m, coeff});
}

LogCombo LogCombo::scaled(double s) const {
  LogCombo out;
  if (s == 0.0) return out;
  out.entries_ = entries_;
  for (auto& e : out.entries_) e.second *= s;
  return out;
}

LogCombo LogCombo::operator+(const LogCombo& other) const {
  LogCombo out = *this;
  for (const auto& [m, c] : other.entries_) out.add(m, c);
  return out;
}

LogCombo LogCombo::operator-(const LogCombo& other) const { return *this + other.scaled(-1.0); }

int LogCombo::eventual_sign() const {
  return entries_.empty() ? 0 : sign_of(entries_.front().second);
}

double LogCombo::value(double n) const {
  double v = 0.0;
  for (const auto& [m, c] : entries_) v += c * m.value(n);
  return v;
}

std::string LogCombo::format() const {
  if (entries_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : entries_) {
    std::string body;
    switch (m.kind) {
      case LogMonomial::Kind::power: {
        std::vector<std::string> parts;
        if (m.n_power != 0.0) parts.push_back(power_factor("n", m.n_power));
        if (m.log_power != 0.0) parts.push_back(power_factor("log(n)", m.log_power));
        body = fmt::format("{}", fmt::join(parts, "*"));
        break;
      }
      case LogMonomial::Kind::loglog: body = "loglog(n)"; break;
      case LogMonomial::Kind::logloglog: body = "logloglog(n)"; break;
      case LogMonomial::Kind::constant: body.clear(); break;
    }
    const double a = std::abs(c);
    std::string piece = body.empty() ? num(a) : (a == 1.0 ? body : num(a) + "*" + body);
    if (out.empty()) {
      out = (c < 0 ? "-" : "") + piece;
    } else {
      out += (c < 0 ? " - " : " + ") + piece;
    }
  }
  return out;
}

// ---------------------------------------------------------------- terms

LogCombo GrowthTerm::log() const {
  LogCombo l;
  for (const auto& e : exp_part) l.add(LogMonomial::power(e.n_power, e.log_power), e.coeff);
  l.add(LogMonomial::power(0.0, 1.0), pow_n);
  l.add(LogMonomial::loglog(), pow_log);
  l.add(LogMonomial::logloglog(), pow_loglog);
  l.add(LogMonomial::one(), std::log(coeff));
  return l;
}

double GrowthTerm::log_value(double n) const {
  const double ln = std::log(n);
  double v = std::log(coeff);
  if (pow_n != 0.0) v += pow_n * ln;
  if (pow_log != 0.0) v += pow_log * std::log(ln);
  if (pow_loglog != 0.0) v += pow_loglog * std::log(std::log(ln));
  for (const auto& e : exp_part) {
    double m = std::exp(e.n_power * ln);
    if (e.log_power != 0.0) m *= std::exp(e.log_power * std::log(ln));
    v += e.coeff * m;
  }
  return v;
}

bool GrowthTerm::same_signature(const GrowthTerm& other) const {
  return pow_n == other.pow_n && pow_log == other.pow_log && pow_loglog == other.pow_loglog &&
         exp_part == other.exp_part;
}

void GrowthTerm::normalize() {
  if (!(coeff > 0.0) || !std::isfinite(coeff)) {
    throw SemanticError("growth term coefficient must be positive and finite, got " + num(coeff));
  }
  LogCombo l;
  for (const auto& e : exp_part) {
    if (e.coeff == 0.0) continue;
    if (e.n_power < 0.0 || (e.n_power == 0.0 && e.log_power <= 0.0)) {
      throw SemanticError("exp() argument monomial must grow (need d > 0), got n^" + num(e.n_power) +
                          "*log(n)^" + num(e.log_power));
    }
    if (e.n_power == 0.0 && e.log_power == 1.0) {
      pow_n += e.coeff;
      continue;
    }
    l.add(LogMonomial::power(e.n_power, e.log_power), e.coeff);
  }
  exp_part.clear();
  for (const auto& [m, c] : l.entries()) exp_part.push_back({c, m.n_power, m.log_power});
}

int compare_terms(const GrowthTerm& a, const GrowthTerm& b) {
  const LogCombo diff = a.log() - b.log();
  for (const auto& [m, c] : diff.entries()) {
    if (m.kind != LogMonomial::Kind::constant) return sign_of(c);
  }
  return 0;
}

double term_limit(const GrowthTerm& t) {
  const LogCombo l = t.log();
  for (const auto& [m, c] : l.entries()) {
    if (m.kind != LogMonomial::Kind::constant) return c > 0 ? kInf : 0.0;
  }
  return t.coeff;
}

// ---------------------------------------------------------------- expressions

GrowthExpr::GrowthExpr(Terms terms) : GrowthExpr(terms, terms) {}

GrowthExpr::GrowthExpr(Terms even, Terms odd) : even_(std::move(even)), odd_(std::move(odd)) {
  normalize(even_);
  normalize(odd_);
  modulated_ = !(even_ == odd_);
}

void GrowthExpr::normalize(Terms& terms) {
  for (auto& t : terms) t.normalize();
  std::stable_sort(terms.begin(), terms.end(),
                   [](const GrowthTerm& a, const GrowthTerm& b) { return compare_terms(a, b) > 0; });
  Terms merged;
  for (auto& t : terms) {
    if (!merged.empty() && merged.back().same_signature(t)) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(std::move(t));
    }
  }
  terms = std::move(merged);
}

GrowthExpr GrowthExpr::constant(double c) {
  if (c == 0.0) return zero();
  GrowthTerm t;
  t.coeff = c;
  return GrowthExpr(Terms{t});
}

GrowthExpr GrowthExpr::term(GrowthTerm t) { return GrowthExpr(Terms{std::move(t)}); }

GrowthExpr GrowthExpr::n_power(double d, double coeff) {
  GrowthTerm t;
  t.coeff = coeff;
  t.pow_n = d;
  return term(t);
}

GrowthExpr GrowthExpr::alt(const GrowthExpr& even, const GrowthExpr& odd) {
  return GrowthExpr(even.even_, odd.odd_);
}

const GrowthExpr::Terms& GrowthExpr::terms() const {
  if (modulated_) throw std::logic_error("terms() on a parity-modulated expression");
  return even_;
}

const GrowthTerm* GrowthExpr::dominant() const {
  const Terms& t = terms();
  return t.empty() ? nullptr : &t.front();
}

long GrowthExpr::threshold() const {
  long th = 1;
  for (const Terms* branch : {&even_, &odd_}) {
    for (const auto& t : *branch) {
      if (t.pow_loglog != 0.0) th = std::max(th, 3L);
      bool uses_log = t.pow_log != 0.0;
      for (const auto& e : t.exp_part) uses_log = uses_log || e.log_power != 0.0;
      if (uses_log) th = std::max(th, 2L);
    }
  }
  return th;
}

double GrowthExpr::log_value(long n) const {
  const Terms& branch = (n % 2 == 0) ? even_ : odd_;
  if (branch.empty()) return -kInf;
  const double x = static_cast<double>(n);
  std::vector<double> logs;
  logs.reserve(branch.size());
  for (const auto& t : branch) logs.push_back(t.log_value(x));
  const double top = *std::max_element(logs.begin(), logs.end());
  if (!std::isfinite(top)) return top;
  double s = 0.0;
  for (double l : logs) s += std::exp(l - top);
  return top + std::log(s);
}

double GrowthExpr::value(long n) const { return std::exp(log_value(n)); }

namespace {

std::string format_exp_monomial(const ExpMonomial& e, bool first) {
  std::vector<std::string> parts;
  const double a = std::abs(e.coeff);
  if (a != 1.0) parts.push_back(num(a));
  if (e.n_power != 0.0) parts.push_back(power_factor("n", e.n_power));
  if (e.log_power != 0.0) parts.push_back(power_factor("log(n)", e.log_power));
  if (parts.empty()) parts.push_back(num(a));
  const std::string body = fmt::format("{}", fmt::join(parts, "*"));
  if (first) return (e.coeff < 0 ? "-" : "") + body;
  return (e.coeff < 0 ? "-" : "+") + body;
}

std::string format_term(const GrowthTerm& t) {
  std::vector<std::string> parts;
  if (t.coeff != 1.0) parts.push_back(num(t.coeff));
  if (!t.exp_part.empty()) {
    std::string inner;
    for (std::size_t i = 0; i < t.exp_part.size(); ++i) inner += format_exp_monomial(t.exp_part[i], i == 0);
    parts.push_back("exp(" + inner + ")");
  }
  if (t.pow_n != 0.0) parts.push_back(power_factor("n", t.pow_n));
  if (t.pow_log != 0.0) parts.push_back(power_factor("log(n)", t.pow_log));
  if (t.pow_loglog != 0.0) parts.push_back(power_factor("loglog(n)", t.pow_loglog));
  if (parts.empty()) return "1";
  return fmt::format("{}", fmt::join(parts, "*"));
}

std::string format_terms(const GrowthExpr::Terms& terms) {
  if (terms.empty()) return "0";
  std::vector<std::string> parts;
  for (const auto& t : terms) parts.push_back(format_term(t));
  return fmt::format("{}", fmt::join(parts, " + "));
}

}  // namespace

std::string GrowthExpr::format() const {
  if (!modulated_) return format_terms(even_);
  return "alt(" + format_terms(even_) + ", " + format_terms(odd_) + ")";
}

// ---------------------------------------------------------------- algebra

GrowthExpr add(const GrowthExpr& a, const GrowthExpr& b) {
  GrowthExpr::Terms even = a.even_;
  even.insert(even.end(), b.even_.begin(), b.even_.end());
  GrowthExpr::Terms odd = a.odd_;
  odd.insert(odd.end(), b.odd_.begin(), b.odd_.end());
  return GrowthExpr(std::move(even), std::move(odd));
}

namespace {

GrowthTerm multiply_terms(const GrowthTerm& x, const GrowthTerm& y) {
  GrowthTerm t;
  t.coeff = x.coeff * y.coeff;
  t.pow_n = x.pow_n + y.pow_n;
  t.pow_log = x.pow_log + y.pow_log;
  t.pow_loglog = x.pow_loglog + y.pow_loglog;
  t.exp_part = x.exp_part;
  t.exp_part.insert(t.exp_part.end(), y.exp_part.begin(), y.exp_part.end());
  return t;
}

GrowthExpr::Terms multiply_sums(const GrowthExpr::Terms& a, const GrowthExpr::Terms& b) {
  GrowthExpr::Terms out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(multiply_terms(x, y));
  return out;
}

GrowthExpr::Terms pow_sum(const GrowthExpr::Terms& a, double s) {
  if (a.empty()) {
    if (s > 0) return {};
    throw SemanticError("0^" + num(s) + " is undefined");
  }
  if (s == 0.0) return {GrowthTerm{}};
  if (a.size() == 1) {
    GrowthTerm t = a.front();
    t.coeff = std::pow(t.coeff, s);
    t.pow_n *= s;
    t.pow_log *= s;
    t.pow_loglog *= s;
    for (auto& e : t.exp_part) e.coeff *= s;
    return {t};
  }
  if (!is_nonneg_integer(s)) {
    throw SemanticError("power " + num(s) + " of a multi-term sum is not representable");
  }
  GrowthExpr::Terms out{GrowthTerm{}};
  for (int i = 0; i < static_cast<int>(s); ++i) {
    out = multiply_sums(out, a);
    // Merge as we go to keep the expansion small.
    out = GrowthExpr(out).terms();
  }
  return out;
}

}  // namespace

GrowthExpr mul(const GrowthExpr& a, const GrowthExpr& b) {
  return GrowthExpr(multiply_sums(a.even_, b.even_), multiply_sums(a.odd_, b.odd_));
}

GrowthExpr pow(const GrowthExpr& a, double s) {
  if (a.is_zero() && s <= 0) throw SemanticError("0^" + num(s) + " is undefined");
  return GrowthExpr(pow_sum(a.even_, s), pow_sum(a.odd_, s));
}

std::optional<GrowthExpr> exp_of(const GrowthExpr& x, double factor) {
  auto branch = [&](const GrowthExpr::Terms& terms) -> std::optional<GrowthExpr::Terms> {
    GrowthTerm out;
    for (const auto& t : terms) {
      if (t.pow_loglog != 0.0 || !t.exp_part.empty()) return std::nullopt;
      const double c = factor * t.coeff;
      const double d = t.pow_n;
      const double e = t.pow_log;
      if (d == 0.0 && e == 0.0) {
        out.coeff *= std::exp(c);
      } else if (d == 0.0 && e == 1.0) {
        out.pow_n += c;
      } else if (d > 0.0 || (d == 0.0 && e > 0.0)) {
        out.exp_part.push_back({c, d, e});
      } else {
        return std::nullopt;  // exp of a vanishing monomial is 1 + o(1), not a term
      }
    }
    return GrowthExpr::Terms{out};
  };
  const auto& even = x.branch(Parity::even);
  const auto& odd = x.branch(Parity::odd);
  auto be = branch(even);
  auto bo = branch(odd);
  if (!be || !bo) return std::nullopt;
  return GrowthExpr::alt(GrowthExpr(*be), GrowthExpr(*bo));
}

std::optional<GrowthExpr> to_growth(const LogCombo& c) {
  GrowthExpr::Terms terms;
  for (const auto& [m, k] : c.entries()) {
    if (k <= 0.0) return std::nullopt;
    GrowthTerm t;
    t.coeff = k;
    switch (m.kind) {
      case LogMonomial::Kind::power:
        t.pow_n = m.n_power;
        t.pow_log = m.log_power;
        break;
      case LogMonomial::Kind::loglog: t.pow_loglog = 1.0; break;
      case LogMonomial::Kind::logloglog: return std::nullopt;
      case LogMonomial::Kind::constant: break;
    }
    terms.push_back(t);
  }
  return GrowthExpr(std::move(terms));
}

// ---------------------------------------------------------------- limits

Dominance compare(const GrowthExpr& a, const GrowthExpr& b) {
  if (a.modulated() || b.modulated()) {
    throw std::invalid_argument("compare() needs unmodulated expressions");
  }
  if (a.is_zero() && b.is_zero()) return {Order::same, 1.0};
  if (a.is_zero()) return {Order::less, 0.0};
  if (b.is_zero()) return {Order::greater, kInf};
  const GrowthTerm& ta = *a.dominant();
  const GrowthTerm& tb = *b.dominant();
  const int c = compare_terms(ta, tb);
  if (c < 0) return {Order::less, 0.0};
  if (c > 0) return {Order::greater, kInf};
  return {Order::same, ta.coeff / tb.coeff};
}

LogExpr log_expr(const GrowthExpr& a) {
  if (a.is_zero()) throw SemanticError("log of the zero sequence");
  auto branch = [](const GrowthExpr::Terms& t) -> std::optional<LogCombo> {
    if (t.empty()) return std::nullopt;
    return t.front().log();
  };
  LogExpr out;
  out.even = branch(a.branch(Parity::even));
  out.odd = branch(a.branch(Parity::odd));
  out.modulated = a.modulated();
  return out;
}

LogExpr log_expr_plain(const LogCombo& c) { return {c, c, false}; }

namespace {

double branch_limit(const GrowthExpr::Terms& r, const std::optional<LogCombo>& l) {
  if (!l) return -kInf;
  if (r.empty() || l->empty()) return 0.0;
  const GrowthTerm& t = r.front();
  const auto& [m, c] = *l->dominant();
  GrowthTerm p = t;
  switch (m.kind) {
    case LogMonomial::Kind::power:
      p.pow_n += m.n_power;
      p.pow_log += m.log_power;
      break;
    case LogMonomial::Kind::loglog: p.pow_loglog += 1.0; break;
    case LogMonomial::Kind::logloglog: {
      // Every term tending to 0 beats log log log n.
      const double tl = term_limit(t);
      return tl == 0.0 ? 0.0 : (c > 0 ? kInf : -kInf);
    }
    case LogMonomial::Kind::constant: break;
  }
  const double lim = term_limit(p);
  if (lim == 0.0) return 0.0;
  if (std::isinf(lim)) return c > 0 ? kInf : -kInf;
  return c * lim;
}

}  // namespace

LimitValue limit_of_product(const GrowthExpr& r, const LogExpr& log_f) {
  const double even = branch_limit(r.branch(Parity::even), log_f.even);
  if (!r.modulated() && !log_f.modulated) return {even, even};
  const double odd = branch_limit(r.branch(Parity::odd), log_f.odd);
  return {std::min(even, odd), std::max(even, odd)};
}

}  // namespace ultraseq
