#include "ultraseq/seqspaces.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "ultraseq/tail.hpp"

namespace ultraseq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// exact-tier values closer than this to the unit threshold count as equal
constexpr double kUnitSlack = 1e-12;

}  // namespace

// ---------------------------------------------------------------- SeqRep

SeqRep SeqRep::symbolic(GrowthExpr e, std::string label) {
  if (label.empty()) label = e.format();
  return SeqRep(std::move(e), std::move(label));
}

SeqRep SeqRep::sampled(SampledSeq s, std::string label) {
  if (!s.eval && s.log_eval) s.eval = [l = s.log_eval](long n) { return std::exp(l(n)); };
  if (!s.eval) throw std::invalid_argument("sampled sequence needs an evaluator");
  if (s.n_max < 10000) throw std::invalid_argument("sampled sequence needs n_max >= 10^4");
  if (s.n_min < 1 || s.n_min > s.n_max) throw std::invalid_argument("sampled sequence has an empty range");
  return SeqRep(std::move(s), std::move(label));
}

SeqRep SeqRep::sampled(std::function<double(long)> eval, long n_min, long n_max, std::string label,
                       int samples_per_window) {
  return sampled(SampledSeq{std::move(eval), n_min, n_max, samples_per_window}, std::move(label));
}

SeqRep SeqRep::sampled_log(std::function<double(long)> log_eval, long n_min, long n_max, std::string label,
                           int samples_per_window) {
  SampledSeq s;
  s.log_eval = std::move(log_eval);
  s.n_min = n_min;
  s.n_max = n_max;
  s.samples_per_window = samples_per_window;
  return sampled(std::move(s), std::move(label));
}

SeqRep SeqRep::sampled_from(const GrowthExpr& e, long n_max, int samples_per_window) {
  return sampled_log([e](long n) { return e.log_value(n); }, std::max(2L, e.threshold()), n_max,
                     "sampled " + e.format(), samples_per_window);
}

double SeqRep::value(long n) const {
  if (const auto* e = expr()) return e->value(n);
  return samples()->eval(n);
}

double SeqRep::log_value(long n) const {
  if (const auto* e = expr()) return e->log_value(n);
  return samples()->log_at(n);
}

SampledSeq SeqRep::as_sampled(long n_max) const {
  if (const auto* s = samples()) return *s;
  const GrowthExpr e = *expr();
  return SampledSeq{[e](long n) { return e.value(n); }, std::max(2L, e.threshold()), n_max, 256,
                    [e](long n) { return e.log_value(n); }};
}

// ---------------------------------------------------------------- values

UltranormValue UltranormValue::exact(double log_value, std::string witness) {
  UltranormValue v;
  v.kind = Kind::exact;
  v.log_value = log_value;
  v.value = std::exp(log_value);
  v.band = {v.value, v.value};
  v.witness = std::move(witness);
  return v;
}

UltranormValue UltranormValue::estimated(double log_center, double log_lo, double log_hi,
                                         std::string witness) {
  UltranormValue v;
  v.kind = Kind::estimated;
  v.log_value = log_center;
  v.value = std::exp(log_center);
  v.band = {std::exp(log_lo), std::exp(log_hi)};
  v.witness = std::move(witness);
  return v;
}

UltranormValue UltranormValue::inconclusive(std::string why) {
  UltranormValue v;
  v.kind = Kind::inconclusive;
  v.log_value = std::numeric_limits<double>::quiet_NaN();
  v.value = std::numeric_limits<double>::quiet_NaN();
  v.band = {0.0, kInf};
  v.witness = std::move(why);
  return v;
}

std::string UltranormValue::format() const {
  switch (kind) {
    case Kind::exact:
      if (log_value == -kInf) return "exact 0";
      if (log_value == kInf) return "exact inf";
      if (log_value == 0.0) return "exact 1";
      return fmt::format("exact e^{} ≈ {:.9g}", log_value, value);
    case Kind::estimated:
      if (log_value == -kInf) return "estimated 0";
      if (log_value == kInf) return "estimated inf";
      return fmt::format("estimated {:.9g} band [{:.9g}, {:.9g}]", value, band.lo, band.hi);
    case Kind::inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::string UltranormValue::describe() const {
  return witness.empty() ? format() : fmt::format("{} ({})", format(), witness);
}

// ---------------------------------------------------------------- ultranorm

namespace {

UltranormValue egorov_ultranorm(const SeqRep& f, int m, const TailOptions& opts) {
  if (const auto* e = f.expr()) {
    if (e->is_zero()) return UltranormValue::exact(-kInf, "f = 0");
    const bool even_zero = e->branch(Parity::even).empty();
    const bool odd_zero = e->branch(Parity::odd).empty();
    return UltranormValue::exact(
        0.0, fmt::format("r_n = 0 for n > {}; f_n > 0 for infinitely many n{}", m,
                         even_zero ? " (odd n)" : odd_zero ? " (even n)" : ""));
  }
  const SampledSeq& s = *f.samples();
  // the log form keeps sequences like exp(-n^2) nonzero past the double range
  const auto nonzero = [&](long n) { return s.log_eval ? s.log_eval(n) > -kInf : s.eval(n) > 0.0; };
  const auto windows = window_sups([&](long n) { return nonzero(n) ? 1.0 : 0.0; },
                                   std::max<long>(s.n_min, m + 1), s.n_max, opts.samples_per_window);
  if (windows.empty()) return UltranormValue::inconclusive("no samples beyond the step");
  const auto& last = windows.back();
  if (last.sup > 0.0) {
    return UltranormValue::estimated(0.0, 0.0, 0.0, fmt::format("f_{} > 0 beyond the step at {}", last.argmax, m));
  }
  return UltranormValue::estimated(-kInf, -kInf, -kInf,
                                   fmt::format("f_n = 0 on sampled points of [{}, {}]", last.first, last.last));
}

}  // namespace

UltranormValue ultranorm(const SeqRep& f, const WeightSeq& r, const TailOptions& opts) {
  if (auto m = r.egorov_m()) return egorov_ultranorm(f, *m, opts);
  if (const GrowthExpr* fe = f.expr(); fe && fe->is_zero()) return UltranormValue::exact(-kInf, "f = 0");

  if (f.expr() && r.expr()) {
    const LimitValue lim = limit_of_product(*r.expr(), log_expr(*f.expr()));
    std::string witness = lim.oscillating()
                              ? fmt::format("parity branches lim r_n log f_n = {} / {}, limsup {}", lim.lo, lim.hi, lim.hi)
                              : fmt::format("lim r_n log f_n = {}", lim.hi);
    return UltranormValue::exact(lim.hi, std::move(witness));
  }

  long n_min = r.first_index();
  long n_max = opts.n_max;
  int samples = opts.samples_per_window;
  if (const auto* s = f.samples()) {
    n_min = std::max(n_min, s->n_min);
    n_max = s->n_max;
    samples = s->samples_per_window;
  } else {
    n_min = std::max(n_min, f.expr()->threshold());
  }
  auto log_term = [&](long n) {
    const double rn = r.value(n);
    const double lf = f.log_value(n);
    if (lf == -kInf) return -kInf;
    return rn == 0.0 ? 0.0 : rn * lf;
  };
  auto weight = [&](long n) { return r.value(n); };
  const TailEstimate t = estimate_log_limsup(log_term, weight, n_min, n_max, samples);
  switch (t.kind) {
    case TailEstimate::Kind::converged:
      return UltranormValue::estimated(t.center, t.lo, t.hi, t.note);
    case TailEstimate::Kind::zero:
      return UltranormValue::estimated(-kInf, -kInf, -kInf, t.note);
    case TailEstimate::Kind::divergent:
      return UltranormValue::estimated(kInf, kInf, kInf, t.note);
    case TailEstimate::Kind::inconclusive:
      break;
  }
  return UltranormValue::inconclusive(t.note);
}

UltranormValue pseudometric(const SeqRep& f, const SeqRep& g, const WeightSeq& r,
                            const std::optional<SeqRep>& difference, const TailOptions& opts) {
  if (difference) return ultranorm(*difference, r, opts);
  if (f.expr() && g.expr()) {
    if (*f.expr() == *g.expr()) return UltranormValue::exact(-kInf, "f = g");
    throw std::invalid_argument("symbolic pseudometric needs |f - g| supplied as a sequence");
  }
  const SampledSeq a = f.as_sampled(opts.n_max);
  const SampledSeq b = g.as_sampled(opts.n_max);
  SampledSeq d;
  d.n_min = std::max(a.n_min, b.n_min);
  d.n_max = std::min(a.n_max, b.n_max);
  d.samples_per_window = std::min(a.samples_per_window, b.samples_per_window);
  d.eval = [fa = a.eval, fb = b.eval](long n) { return std::abs(fa(n) - fb(n)); };
  return ultranorm(SeqRep::sampled(std::move(d), "|" + f.label() + " - " + g.label() + "|"), r, opts);
}

// ---------------------------------------------------------------- truth values

std::string to_string(Mode m) { return m == Mode::standard ? "standard" : "unit-ball"; }

std::string to_string(Truth t) {
  switch (t) {
    case Truth::no: return "no";
    case Truth::yes: return "yes";
    case Truth::unknown: return "unknown";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::negligible: return "negligible";
    case Verdict::moderate: return "moderate";
    case Verdict::boundary: return "boundary";
    case Verdict::divergent: return "divergent";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

Truth truth_and(Truth a, Truth b) {
  if (a == Truth::no || b == Truth::no) return Truth::no;
  if (a == Truth::yes && b == Truth::yes) return Truth::yes;
  return Truth::unknown;
}

Truth truth_or(Truth a, Truth b) {
  if (a == Truth::yes || b == Truth::yes) return Truth::yes;
  if (a == Truth::no && b == Truth::no) return Truth::no;
  return Truth::unknown;
}

Truth truth_not(Truth a) {
  if (a == Truth::unknown) return a;
  return a == Truth::yes ? Truth::no : Truth::yes;
}

Mode mode_for(const WeightFamily& w) { return w.unit_ball() ? Mode::unit_ball : Mode::standard; }

// ---------------------------------------------------------------- classify

namespace {

Truth finite(const UltranormValue& v) {
  if (!v.decided()) return Truth::unknown;
  return truth_of(v.log_value < kInf);
}

Truth zero(const UltranormValue& v) {
  if (!v.decided()) return Truth::unknown;
  return truth_of(v.log_value == -kInf);
}

Truth at_most_one(const UltranormValue& v) {
  if (!v.decided()) return Truth::unknown;
  if (v.kind == UltranormValue::Kind::exact) return truth_of(v.log_value <= kUnitSlack);
  if (v.band.hi <= 1.0) return Truth::yes;
  if (v.band.lo > 1.0) return Truth::no;
  return Truth::unknown;
}

Truth below_one(const UltranormValue& v) {
  if (!v.decided()) return Truth::unknown;
  if (v.kind == UltranormValue::Kind::exact) return truth_of(v.log_value < -kUnitSlack);
  if (v.band.hi < 1.0) return Truth::yes;
  if (v.band.lo >= 1.0) return Truth::no;
  return Truth::unknown;
}

}  // namespace

MemberTruth member_truth(const std::vector<UltranormValue>& channels, Mode mode) {
  MemberTruth t{Truth::yes, Truth::yes};
  for (const auto& v : channels) {
    t.in_f = truth_and(t.in_f, mode == Mode::standard ? finite(v) : at_most_one(v));
    t.in_k = truth_and(t.in_k, mode == Mode::standard ? zero(v) : below_one(v));
  }
  return t;
}

Classification classify(const Bundle& f, const WeightFamily& w, Mode mode, const ClassifyOptions& opts) {
  if (f.empty()) throw std::invalid_argument("classify needs at least one seminorm channel");
  Classification c;
  c.family = w.name();
  c.mode = mode;
  c.direction = w.direction();
  c.m_bound = opts.m_max;

  const std::vector<int> ms = w.indices(opts.m_max);
  const long channels = static_cast<long>(f.size());
  const long tasks = static_cast<long>(ms.size()) * channels;
  std::vector<UltranormValue> values(static_cast<std::size_t>(tasks));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (long t = 0; t < tasks; ++t) {
    try {
      values[t] = ultranorm(f[t % channels], w.member(ms[t / channels]), opts.tail);
    } catch (...) {
#pragma omp critical(ultraseq_classify_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  Truth in_f = Truth::unknown;
  Truth in_k = Truth::unknown;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    std::vector<UltranormValue> row(values.begin() + static_cast<long>(i) * channels,
                                    values.begin() + static_cast<long>(i + 1) * channels);
    for (long ch = 0; ch < channels; ++ch) c.details.push_back({ms[i], static_cast<int>(ch), row[ch]});
    const MemberTruth mt = member_truth(row, mode);
    if (i == 0) {
      in_f = mt.in_f;
      in_k = mt.in_k;
    } else if (w.direction() == Direction::increasing) {
      in_f = truth_and(in_f, mt.in_f);
      in_k = truth_or(in_k, mt.in_k);
    } else {
      in_f = truth_or(in_f, mt.in_f);
      in_k = truth_and(in_k, mt.in_k);
    }
  }
  c.moderate = in_f;
  c.negligible = in_k;
  if (in_k == Truth::yes) {
    c.verdict = Verdict::negligible;
  } else if (in_f == Truth::no) {
    c.verdict = Verdict::divergent;
  } else if (in_f == Truth::yes && in_k == Truth::no) {
    c.verdict = mode == Mode::standard ? Verdict::moderate : Verdict::boundary;
  } else {
    c.verdict = Verdict::inconclusive;
  }
  return c;
}

std::string Classification::format() const {
  std::string out = fmt::format("family {} ({}, {} mode)\n", family, to_string(direction), to_string(mode));
  for (const auto& d : details) out += fmt::format("m={} channel={} {}\n", d.m, d.channel, d.value.describe());
  out += fmt::format("verdict: {} (moderate={}, negligible={}", to_string(verdict), to_string(moderate),
                     to_string(negligible));
  if (direction != Direction::single) out += fmt::format(", verified up to m_max={}", m_bound);
  out += ")\n";
  return out;
}

IdealCheck ideal_check(const Bundle& k, const Bundle& f, const Bundle& product, const WeightFamily& w,
                       Mode mode, const ClassifyOptions& opts) {
  if (k.size() != f.size() || k.size() != product.size()) {
    throw std::invalid_argument("ideal_check needs bundles with the same channel count");
  }
  IdealCheck out;
  out.k = classify(k, w, mode, opts);
  out.f = classify(f, w, mode, opts);
  out.product = classify(product, w, mode, opts);
  out.premise = out.k.verdict == Verdict::negligible && out.f.moderate == Truth::yes;
  out.pass = !out.premise || out.product.verdict == Verdict::negligible;
  return out;
}

std::string IdealCheck::format() const {
  return fmt::format("k: {}\nf: {}\nk*f: {}\nideal check: {}{}\n", to_string(k.verdict), to_string(f.verdict),
                     to_string(product.verdict), pass ? "pass" : "FAIL",
                     premise ? "" : " (premise k in K, f in F not met)");
}

}  // namespace ultraseq
