#include "ultraseq/gennum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "ultraseq/corpus.hpp"
#include "ultraseq/tail.hpp"

namespace ultraseq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kZeroTolerance = 1e-3;
constexpr double kBoundarySlack = 1e-12;

void require_same_space(const GenNumber& a, const GenNumber& b) {
  if (a.space() != b.space()) throw std::invalid_argument("generalized numbers live in different spaces");
}

}  // namespace

// ---------------------------------------------------------------- Space

Space::Space(WeightFamily family, Mode mode, ClassifyOptions opts)
    : family_(std::move(family)), mode_(mode), opts_(opts) {}

std::shared_ptr<const Space> Space::colombeau() {
  static const auto space = std::make_shared<const Space>(catalog("colombeau"), Mode::standard);
  return space;
}

WeightSeq Space::weight() const {
  if (family_.direction() != Direction::single) {
    throw std::invalid_argument("family " + family_.name() + " has no single weight for ultranorm thresholds");
  }
  return family_.member(family_.m_lo());
}

// ---------------------------------------------------------------- GenNumber

GenNumber GenNumber::raw_symbolic(GrowthExpr magnitude, int sign, SpacePtr space) {
  GenNumber g;
  g.label_ = (sign < 0 ? "-" : "") + magnitude.format();
  g.magnitude_ = std::move(magnitude);
  g.sign_ = sign < 0 ? -1 : 1;
  g.space_ = std::move(space);
  return g;
}

GenNumber GenNumber::raw_sampled(Sampled s, SpacePtr space, std::string label) {
  GenNumber g;
  g.sampled_ = std::make_shared<const Sampled>(std::move(s));
  g.space_ = std::move(space);
  g.label_ = std::move(label);
  return g;
}

GenNumber GenNumber::symbolic(GrowthExpr magnitude, int sign, SpacePtr space) {
  if (!space) throw std::invalid_argument("generalized number needs a space");
  GenNumber g = raw_symbolic(std::move(magnitude), sign, std::move(space));
  const Classification c = classify(g.magnitude(), g.space_->family(), g.space_->mode(), g.space_->options());
  if (c.moderate == Truth::no) {
    throw std::invalid_argument("representative " + g.label_ + " is not moderate in " + g.space_->family().name());
  }
  return g;
}

GenNumber GenNumber::symbolic(std::string_view magnitude, SpacePtr space, int sign) {
  return symbolic(parse(magnitude), sign, std::move(space));
}

GenNumber GenNumber::sampled(std::function<std::complex<double>(long)> eval, long n_min, long n_max,
                             SpacePtr space, std::string label, int samples_per_window) {
  if (!space) throw std::invalid_argument("generalized number needs a space");
  GenNumber g = raw_sampled({std::move(eval), n_min, n_max, samples_per_window}, std::move(space), std::move(label));
  const Classification c = classify(g.magnitude(), g.space_->family(), g.space_->mode(), g.space_->options());
  if (c.moderate == Truth::no) {
    throw std::invalid_argument("representative " + g.label_ + " is not moderate in " + g.space_->family().name());
  }
  return g;
}

std::complex<double> GenNumber::value(long n) const {
  if (sampled_) return sampled_->eval(n);
  return sign_ * magnitude_.value(n);
}

double GenNumber::log_abs(long n) const {
  if (sampled_) return std::log(std::abs(sampled_->eval(n)));
  return magnitude_.log_value(n);
}

long GenNumber::n_min() const {
  if (sampled_) return sampled_->n_min;
  return std::max(2L, magnitude_.threshold());
}

long GenNumber::n_max() const {
  return sampled_ ? sampled_->n_max : space_->options().tail.n_max;
}

SeqRep GenNumber::magnitude() const {
  if (!sampled_) return SeqRep::symbolic(magnitude_, label_);
  if (sampled_->equivalent) return SeqRep::symbolic(*sampled_->equivalent, "|" + label_ + "|");
  SampledSeq s;
  s.eval = [e = sampled_->eval](long n) { return std::abs(e(n)); };
  s.n_min = sampled_->n_min;
  s.n_max = sampled_->n_max;
  s.samples_per_window = sampled_->samples;
  return SeqRep::sampled(std::move(s), "|" + label_ + "|");
}

namespace {

GenNumber sampled_combination(const GenNumber& a, const GenNumber& b, char op) {
  const long lo = std::max(a.n_min(), b.n_min());
  const long hi = std::min(a.n_max(), b.n_max());
  auto fa = [a](long n) { return a.value(n); };
  auto fb = [b](long n) { return b.value(n); };
  std::function<std::complex<double>(long)> f;
  if (op == '+') {
    f = [fa, fb](long n) { return fa(n) + fb(n); };
  } else {
    f = [fa, fb](long n) { return fa(n) * fb(n); };
  }
  return GenNumber::sampled(std::move(f), lo, hi, a.space(), fmt::format("({} {} {})", a.label(), op, b.label()));
}

}  // namespace

GenNumber add(const GenNumber& a, const GenNumber& b) {
  require_same_space(a, b);
  if (b.is_symbolic() && b.magnitude_.is_zero()) return a;
  if (a.is_symbolic() && a.magnitude_.is_zero()) return b;
  std::optional<GrowthExpr> eq;
  if (a.is_symbolic() && b.is_symbolic()) {
    if (a.sign_ == b.sign_) return GenNumber::raw_symbolic(add(a.magnitude_, b.magnitude_), a.sign_, a.space_);
    if (a.magnitude_ == b.magnitude_) return GenNumber::raw_symbolic(GrowthExpr::zero(), 1, a.space_);
  }
  const GrowthExpr* ma = a.is_symbolic() ? &a.magnitude_ : a.sampled_->equivalent ? &*a.sampled_->equivalent : nullptr;
  const GrowthExpr* mb = b.is_symbolic() ? &b.magnitude_ : b.sampled_->equivalent ? &*b.sampled_->equivalent : nullptr;
  if (ma && mb && !ma->modulated() && !mb->modulated() && !ma->is_zero() && !mb->is_zero()) {
    const Dominance d = compare(*ma, *mb);
    if (d.order == Order::greater) eq = *ma;
    if (d.order == Order::less) eq = *mb;
    // opposite signs of the same order: |a - b| ~ |ratio - 1| b
    if (d.order == Order::same && a.is_symbolic() && b.is_symbolic() && std::abs(d.ratio - 1.0) > 1e-12) {
      eq = scale(*mb, std::abs(d.ratio - 1.0));
    }
  }
  if (!eq) return sampled_combination(a, b, '+');
  auto fa = [a](long n) { return a.value(n); };
  auto fb = [b](long n) { return b.value(n); };
  return GenNumber::raw_sampled({[fa, fb](long n) { return fa(n) + fb(n); }, std::max(a.n_min(), b.n_min()),
                                 std::min(a.n_max(), b.n_max()), 256, std::move(eq)},
                                a.space_, fmt::format("({} + {})", a.label(), b.label()));
}

GenNumber neg(const GenNumber& a) {
  if (a.is_symbolic()) {
    GenNumber out = GenNumber::raw_symbolic(a.magnitude_, -a.sign_, a.space_);
    return out;
  }
  auto f = a.sampled_->eval;
  return GenNumber::raw_sampled({[f](long n) { return -f(n); }, a.sampled_->n_min, a.sampled_->n_max, a.sampled_->samples,
                                 a.sampled_->equivalent},
                                a.space_, "-" + a.label_);
}

GenNumber sub(const GenNumber& a, const GenNumber& b) { return add(a, neg(b)); }

GenNumber mul(const GenNumber& a, const GenNumber& b) {
  require_same_space(a, b);
  if (a.is_symbolic() && b.is_symbolic()) {
    return GenNumber::raw_symbolic(mul(a.magnitude_, b.magnitude_), a.sign_ * b.sign_, a.space_);
  }
  return sampled_combination(a, b, '*');
}

// ---------------------------------------------------------------- verdict pieces

std::string AssocVerdict::format() const {
  std::string out = fmt::format("{}: {}{}", kind, holds == Truth::yes ? "holds" : holds == Truth::no ? "fails" : "inconclusive",
                                boundary ? " (boundary: equality at a strict threshold)" : "");
  for (const auto& w : witness) out += "\n  " + w;
  return out;
}

namespace {

AssocVerdict verdict(std::string kind, Truth holds, std::string witness, bool boundary = false) {
  AssocVerdict v;
  v.kind = std::move(kind);
  v.holds = holds;
  v.boundary = boundary;
  v.witness.push_back(std::move(witness));
  return v;
}

// [[c]] < e^{-s}; exact equality is "no" with the boundary flag.
AssocVerdict below_ball(const SeqRep& c, const WeightSeq& r, double s, const TailOptions& opts, std::string kind) {
  const UltranormValue u = ultranorm(c, r, opts);
  const std::string w = fmt::format("ultranorm {} vs threshold e^{} ≈ {:.9g}", u.describe(), -s, std::exp(-s));
  if (!u.decided()) return verdict(std::move(kind), Truth::unknown, w);
  if (u.kind == UltranormValue::Kind::exact) {
    if (std::abs(u.log_value + s) <= kBoundarySlack * std::max(1.0, std::abs(s))) {
      return verdict(std::move(kind), Truth::no, w, true);
    }
    return verdict(std::move(kind), truth_of(u.log_value < -s), w);
  }
  const double t = std::exp(-s);
  if (u.band.hi < t) return verdict(std::move(kind), Truth::yes, w);
  if (u.band.lo > t) return verdict(std::move(kind), Truth::no, w);
  return verdict(std::move(kind), Truth::unknown, w + " (band straddles the threshold)");
}

Truth expr_tends_to_zero(const GrowthExpr& e) {
  if (e.is_zero()) return Truth::yes;
  for (Parity p : {Parity::even, Parity::odd}) {
    const auto& terms = e.branch(p);
    if (terms.empty()) continue;
    if (compare(GrowthExpr(terms), GrowthExpr::constant(1.0)).order != Order::less) return Truth::no;
  }
  return Truth::yes;
}

// lim factor_n * |c_n| = 0 where log factor_n = s / r_n.
AssocVerdict limit_zero(const SeqRep& c, const std::optional<WeightSeq>& r, double s, const TailOptions& opts,
                        std::string kind) {
  if (const GrowthExpr* e = c.expr()) {
    std::optional<GrowthExpr> factor = GrowthExpr::constant(1.0);
    if (s != 0.0) {
      factor = std::nullopt;
      if (r && r->expr()) factor = exp_of(pow(*r->expr(), -1.0), s);
    }
    if (factor) {
      const GrowthExpr prod = mul(*factor, *e);
      const Truth t = expr_tends_to_zero(prod);
      return verdict(std::move(kind), t, fmt::format("{} {}", prod.format(), t == Truth::yes ? "-> 0" : "does not tend to 0"));
    }
  }
  long n_min = 2;
  long n_max = opts.n_max;
  int samples = opts.samples_per_window;
  if (const auto* sm = c.samples()) {
    n_min = sm->n_min;
    n_max = sm->n_max;
    samples = sm->samples_per_window;
  } else {
    n_min = std::max(n_min, c.expr()->threshold());
  }
  if (r) n_min = std::max(n_min, r->first_index());
  auto term = [&](long n) {
    const double lc = c.log_value(n);
    if (lc == -kInf) return 0.0;
    return std::exp(lc + (s == 0.0 ? 0.0 : s / r->value(n)));
  };
  const LimitZeroTest t = tends_to_zero(term, n_min, n_max, samples, kZeroTolerance);
  const Truth holds = t.kind == LimitZeroTest::Kind::yes ? Truth::yes : t.kind == LimitZeroTest::Kind::no ? Truth::no : Truth::unknown;
  return verdict(std::move(kind), holds, t.note);
}

}  // namespace

// ---------------------------------------------------------------- J predicates

JPredicate null_sequences() {
  return {"null sequences", [](const GenNumber& x) {
            const SeqRep m = x.magnitude();
            return limit_zero(m, std::nullopt, 0.0, x.space()->options().tail, "x_n -> 0");
          }};
}

JPredicate ball(double s) {
  return {fmt::format("ball [[x]] < e^{}", -s), [s](const GenNumber& x) {
            return below_ball(x.magnitude(), x.space()->weight(), s, x.space()->options().tail,
                              fmt::format("[[x]] < e^{}", -s));
          }};
}

JPredicate bounded_sequences() {
  return {"bounded sequences", [](const GenNumber& x) {
            const SeqRep m = x.magnitude();
            if (const GrowthExpr* e = m.expr()) {
              Truth t = Truth::yes;
              for (Parity p : {Parity::even, Parity::odd}) {
                const auto& terms = e->branch(p);
                if (!terms.empty() && compare(GrowthExpr(terms), GrowthExpr::constant(1.0)).order == Order::greater) {
                  t = Truth::no;
                }
              }
              return verdict("x bounded", t, e->format());
            }
            const SampledSeq* s = m.samples();
            const auto windows = window_sups(s->eval, s->n_min, s->n_max, s->samples_per_window);
            std::vector<double> sups;
            for (const auto& w : windows) sups.push_back(w.sup);
            const std::size_t from = sups.size() > 4 ? sups.size() - 4 : 0;
            bool grows = sups.size() > 1;
            bool settles = true;
            for (std::size_t i = from + 1; i < sups.size(); ++i) {
              if (!(sups[i] > 1.5 * sups[i - 1])) grows = false;
              if (sups[i] > sups[i - 1] * (1 + 1e-9)) settles = false;
            }
            const Truth t = settles ? Truth::yes : grows ? Truth::no : Truth::unknown;
            return verdict("x bounded", t, fmt::format("last window sup {:.9g}", sups.empty() ? 0.0 : sups.back()));
          }};
}

// ---------------------------------------------------------------- association

std::string AssocKind::name() const {
  switch (tag) {
    case Tag::strong: return fmt::format("strong {}-association", s);
    case Tag::weak: return "weak association";
    case Tag::dual: return fmt::format("{}-dual association", s);
    case Tag::weak_s: return fmt::format("weak {}-association", s);
    case Tag::custom: return fmt::format("J,X-association (J = {}, |X| = {})", j.name, x.size());
  }
  return "?";
}

GenNumber exp_s_over_r(const SpacePtr& space, double s) {
  const WeightSeq r = space->weight();
  if (const GrowthExpr* e = r.expr()) {
    if (auto f = exp_of(pow(*e, -1.0), s)) return GenNumber::symbolic(*f, 1, space);
  }
  return GenNumber::sampled(
      [r, s](long n) { return std::complex<double>(std::exp(s / r.value(n)), 0.0); }, std::max(2L, r.first_index()),
      space->options().tail.n_max, space, fmt::format("exp({}/r_n)", s));
}

std::vector<GenNumber> x_powers(const SpacePtr& space, int s_max) {
  std::vector<GenNumber> out;
  for (int s = 0; s <= s_max; ++s) out.push_back(exp_s_over_r(space, s));
  return out;
}

AssocVerdict is_zero(const GenNumber& a) {
  const Space& sp = *a.space();
  const Classification c = classify(a.magnitude(), sp.family(), sp.mode(), sp.options());
  AssocVerdict v;
  v.kind = "zero in F/K";
  v.holds = c.negligible;
  v.witness.push_back(fmt::format("representative {} classifies {}", a.label(), to_string(c.verdict)));
  for (const auto& d : c.details) {
    if (d.m == c.details.front().m || !d.value.decided()) v.witness.push_back(fmt::format("m={} {}", d.m, d.value.describe()));
  }
  return v;
}

AssocVerdict associate(const GenNumber& a, const GenNumber& b, const AssocKind& kind,
                       const std::optional<SeqRep>& difference) {
  require_same_space(a, b);
  const Space& sp = *a.space();
  const TailOptions& tail = sp.options().tail;
  const GenNumber diff = difference ? a : sub(a, b);
  const SeqRep d = difference ? *difference : diff.magnitude();

  AssocVerdict out;
  switch (kind.tag) {
    case AssocKind::Tag::strong:
    case AssocKind::Tag::weak_s:
      out = below_ball(d, sp.weight(), kind.s, tail, kind.name());
      break;
    case AssocKind::Tag::weak:
      out = limit_zero(d, std::nullopt, 0.0, tail, kind.name());
      break;
    case AssocKind::Tag::dual:
      out = limit_zero(d, sp.weight(), kind.s, tail, kind.name());
      break;
    case AssocKind::Tag::custom: {
      if (!kind.j.test) throw std::invalid_argument("J,X-association needs a J predicate");
      if (difference && !d.expr()) throw std::invalid_argument("J,X-association needs a symbolic difference");
      const GenNumber base = difference ? GenNumber::symbolic(*d.expr(), 1, a.space()) : diff;
      out.kind = kind.name();
      out.holds = Truth::yes;
      const std::vector<GenNumber> xs = kind.x.empty() ? std::vector<GenNumber>{GenNumber::symbolic(GrowthExpr::constant(1.0), 1, a.space())} : kind.x;
      for (const GenNumber& x : xs) {
        const AssocVerdict part = kind.j.test(mul(x, base));
        out.holds = truth_and(out.holds, part.holds);
        out.witness.push_back(fmt::format("x = {}: {}", x.label(), part.format()));
        if (out.holds == Truth::no) break;
      }
      break;
    }
  }
  out.kind = kind.name();
  return out;
}

// ---------------------------------------------------------------- J checks

std::string WellDefinedReport::format() const {
  return fmt::format("J well-defined: {} ({} ideal elements, {} sums checked){}", pass ? "pass" : "FAIL", ideal_checked,
                     pairs_checked, counterexample.empty() ? "" : "\n  counterexample: " + counterexample);
}

WellDefinedReport jx_well_defined(const JPredicate& j, const SpacePtr& space, int samples, unsigned long long seed) {
  Corpus corpus(seed);
  WellDefinedReport report;
  std::vector<GenNumber> members;
  int attempts = 0;
  while (report.ideal_checked < samples && attempts < 50 * samples) {
    ++attempts;
    const GrowthExpr e = corpus.negligible_candidate();
    const GenNumber k = GenNumber::symbolic(e, corpus.integer(0, 1) ? 1 : -1, space);
    if (is_zero(k).holds != Truth::yes) continue;
    ++report.ideal_checked;
    const AssocVerdict v = j.test(k);
    if (v.holds == Truth::no) {
      report.pass = false;
      report.counterexample = fmt::format("ideal element {} is not in J ({})", k.label(), v.format());
      return report;
    }
    members.push_back(k);
  }
  // J-members beyond the ideal: random corpus elements the predicate accepts
  for (int i = 0; i < 4 * samples && static_cast<int>(members.size()) < 2 * samples; ++i) {
    const GrowthExpr e = corpus.next_unmodulated();
    try {
      const GenNumber x = GenNumber::symbolic(e, 1, space);
      if (j.test(x).holds == Truth::yes) members.push_back(x);
    } catch (const std::invalid_argument&) {
    }
  }
  for (int i = 0; i < samples && members.size() > 1; ++i) {
    const auto& x = members[static_cast<std::size_t>(corpus.integer(0, static_cast<int>(members.size()) - 1))];
    const auto& y = members[static_cast<std::size_t>(corpus.integer(0, static_cast<int>(members.size()) - 1))];
    if (!x.is_symbolic() || !y.is_symbolic() || x.sign() != y.sign()) continue;
    ++report.pairs_checked;
    const AssocVerdict v = j.test(add(x, y));
    if (v.holds == Truth::no) {
      report.pass = false;
      report.counterexample = fmt::format("{} + {} leaves J ({})", x.label(), y.label(), v.format());
      return report;
    }
  }
  return report;
}

}  // namespace ultraseq
