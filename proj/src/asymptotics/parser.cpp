// Recursive-descent parser for the growth-expression grammar:
//
//   expr    := term ('+' term)*
//   term    := factor (('*' | '/') factor)*
//   factor  := primary ('^' signed-number)*
//   primary := number | 'n' | 'log(n)' | 'loglog(n)' | 'exp(' poly ')'
//            | '(' expr ')' | 'alt(' expr ',' expr ')'
//   poly    := ['+'|'-'] mono (('+'|'-') mono)*
//   mono    := pfac ('*' pfac)*
//   pfac    := number | 'n' ['^' signed-number] | 'log(n)' ['^' signed-number]

#include <cctype>
#include <charconv>

#include "ultraseq/asymptotics.hpp"

namespace ultraseq {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  GrowthExpr run() {
    GrowthExpr e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
  [[noreturn]] void semantic(const std::string& msg, std::size_t at) const {
    throw SemanticError(msg + " at position " + std::to_string(at));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool accept(std::string_view tok) {
    skip_ws();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  // log(n) / loglog(n) with optional whitespace inside the parentheses.
  bool accept_call_of_n(std::string_view name) {
    const std::size_t save = pos_;
    if (accept(name) && accept("(") && accept("n") && accept(")")) return true;
    pos_ = save;
    return false;
  }

  bool at_number() {
    skip_ws();
    return pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.');
  }

  double number() {
    skip_ws();
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        digits();
      } else {
        pos_ = save;
      }
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, v);
    if (ec != std::errc() || ptr != s_.data() + pos_ || pos_ == start) {
      pos_ = start;
      fail("malformed number");
    }
    return v;
  }

  double signed_number() {
    if (accept("(")) {
      double v = signed_number();
      expect(")");
      return v;
    }
    double sign = 1.0;
    if (accept("-")) {
      sign = -1.0;
    } else {
      accept("+");
    }
    if (!at_number()) fail("expected number");
    return sign * number();
  }

  GrowthExpr expr() {
    GrowthExpr e = term();
    while (accept("+")) e = add(e, term());
    return e;
  }

  GrowthExpr term() {
    skip_ws();
    if (peek('-')) semantic("negative coefficients are not allowed", pos_);
    GrowthExpr e = factor();
    for (;;) {
      if (accept("*")) {
        e = mul(e, factor());
      } else if (peek('/')) {
        const std::size_t at = pos_++;
        GrowthExpr d = factor();
        try {
          e = mul(e, pow(d, -1.0));
        } catch (const SemanticError& err) {
          semantic(std::string("cannot divide: ") + err.what(), at);
        }
      } else {
        break;
      }
    }
    return e;
  }

  GrowthExpr factor() {
    GrowthExpr e = primary();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (!accept("^")) break;
      const double s = signed_number();
      try {
        e = pow(e, s);
      } catch (const SemanticError& err) {
        semantic(err.what(), at);
      }
    }
    return e;
  }

  GrowthExpr primary() {
    skip_ws();
    const std::size_t at = pos_;
    if (at_number()) {
      const double v = number();
      return v == 0.0 ? GrowthExpr::zero() : GrowthExpr::constant(v);
    }
    if (accept_call_of_n("loglog")) {
      GrowthTerm t;
      t.pow_loglog = 1.0;
      return GrowthExpr::term(t);
    }
    if (accept_call_of_n("log")) {
      GrowthTerm t;
      t.pow_log = 1.0;
      return GrowthExpr::term(t);
    }
    if (accept("exp")) {
      expect("(");
      GrowthTerm t;
      t.exp_part = poly();
      expect(")");
      try {
        return GrowthExpr::term(t);
      } catch (const SemanticError& err) {
        semantic(err.what(), at);
      }
    }
    if (accept("alt")) {
      expect("(");
      GrowthExpr a = expr();
      expect(",");
      GrowthExpr b = expr();
      expect(")");
      return GrowthExpr::alt(a, b);
    }
    if (accept("n")) return GrowthExpr::n_power(1.0);
    if (accept("(")) {
      GrowthExpr e = expr();
      expect(")");
      return e;
    }
    if (pos_ >= s_.size()) fail("unexpected end of input");
    fail("unexpected '" + std::string(1, s_[pos_]) + "'");
  }

  std::vector<ExpMonomial> poly() {
    std::vector<ExpMonomial> out;
    double sign = 1.0;
    if (accept("-")) {
      sign = -1.0;
    } else {
      accept("+");
    }
    for (;;) {
      ExpMonomial m = mono();
      m.coeff *= sign;
      out.push_back(m);
      if (accept("+")) {
        sign = 1.0;
      } else if (accept("-")) {
        sign = -1.0;
      } else {
        break;
      }
    }
    return out;
  }

  ExpMonomial mono() {
    ExpMonomial m{1.0, 0.0, 0.0};
    do {
      if (at_number()) {
        m.coeff *= number();
      } else if (accept_call_of_n("log")) {
        m.log_power += accept("^") ? signed_number() : 1.0;
      } else if (accept("n")) {
        m.n_power += accept("^") ? signed_number() : 1.0;
      } else {
        fail("expected a monomial c*n^d*log(n)^e inside exp()");
      }
    } while (accept("*"));
    return m;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

GrowthExpr parse(std::string_view text) { return Parser(text).run(); }

}  // namespace ultraseq
