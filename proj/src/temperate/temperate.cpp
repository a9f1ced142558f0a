#include "ultraseq/temperate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

namespace ultraseq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
/// A window maximum of r^M log g(.) above this, still growing, counts as unbounded.
constexpr double kGrowthBound = 50.0;
constexpr double kEpsLevels[] = {-4.0, -8.0};
constexpr int kSamplesPerWindow = 8;
constexpr double kLatticeSlack = 1e-4;

using Status = TemperateCertificate::Status;
using Role = TemperateCertificate::Role;

double log_sum_exp(const std::vector<double>& coeffs, double t) {
  double best = -kInf;
  std::vector<double> terms;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] <= 0.0) continue;
    const double term = std::log(coeffs[i]) + (i == 0 ? 0.0 : static_cast<double>(i) * t);
    terms.push_back(term);
    best = std::max(best, term);
  }
  if (!std::isfinite(best)) return best;
  double s = 0.0;
  for (double v : terms) s += std::exp(v - best);
  return best + std::log(s);
}

std::vector<double> x_grid() {
  std::vector<double> xs;
  for (int e = -8; e <= 8; ++e) xs.push_back(std::pow(10.0, e));
  return xs;
}

struct NWindow {
  long first;
  long last;
  std::vector<long> ns;
};

std::vector<NWindow> n_windows(long n_max) {
  std::vector<NWindow> out;
  // full windows only: a clipped last window would hide growth
  for (long lo = 2; 2 * lo - 1 <= n_max; lo *= 2) {
    const long hi = 2 * lo - 1;
    NWindow w{lo, hi, {}};
    for (int i = 0; i < kSamplesPerWindow; ++i) {
      const double t = static_cast<double>(i) / (kSamplesPerWindow - 1);
      w.ns.push_back(std::lround(std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)))));
    }
    w.ns.erase(std::unique(w.ns.begin(), w.ns.end()), w.ns.end());
    out.push_back(std::move(w));
  }
  return out;
}

/// r^M_n log g(x^{1/r^m_n}); NaN when a weight is not usable at n.
double q_value(const ScalarMap& g, const WeightSeq& rm, const WeightSeq& rM, double x, long n) {
  const double a = rm.value(n);
  const double b = rM.value(n);
  if (!(a > 0) || !(b > 0) || !std::isfinite(a) || !std::isfinite(b)) return kNaN;
  return b * g.log_of_exp(std::log(x) / a);
}

double window_max(const ScalarMap& g, const WeightSeq& rm, const WeightSeq& rM, double x, const NWindow& w) {
  double best = -kInf;
  for (long n : w.ns) {
    const double q = q_value(g, rm, rM, x, n);
    if (std::isnan(q)) return kNaN;
    best = std::max(best, q);
  }
  return best;
}

struct PairResult {
  Truth holds = Truth::unknown;
  std::optional<TemperateWitness> witness;
};

PairResult numeric_moderate(const ScalarMap& g, const WeightFamily& w, int m, int big_m, long n_max) {
  const WeightSeq rm = w.member(m);
  const WeightSeq rM = w.member(big_m);
  const auto xs = x_grid();
  const auto windows = n_windows(n_max);
  std::vector<PairResult> per_x(xs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<double> sups;
    for (const auto& win : windows) sups.push_back(window_max(g, rm, rM, xs[i], win));
    PairResult r;
    r.holds = Truth::yes;
    for (std::size_t k = 0; k < sups.size(); ++k) {
      if (std::isnan(sups[k])) {
        r.holds = Truth::unknown;
        break;
      }
      if (sups[k] == kInf) {
        r.holds = Truth::no;
        r.witness = TemperateWitness{m, big_m, xs[i], windows[k].first, windows[k].last, sups[k], kGrowthBound};
        break;
      }
    }
    if (r.holds == Truth::yes && sups.size() >= 4) {
      const std::size_t last = sups.size() - 1;
      bool rising = sups[last] > kGrowthBound;
      for (std::size_t k = last - 3; k < last; ++k) rising = rising && sups[k + 1] > sups[k] * (1 + 1e-3);
      if (rising) {
        r.holds = Truth::no;
        r.witness = TemperateWitness{m, big_m, xs[i], windows[last].first, windows[last].last, sups[last], kGrowthBound};
      }
    }
    per_x[i] = r;
  }
  PairResult out;
  out.holds = Truth::yes;
  for (const auto& r : per_x) {
    if (r.holds == Truth::no) return r;
    out.holds = truth_and(out.holds, r.holds);
  }
  return out;
}

/// Uniformity: for each eps level the largest grid x below which every value
/// is < log eps must exist in every n-window and must not drift toward 0
/// over the last windows.
PairResult numeric_compatible(const ScalarMap& h, const WeightFamily& w, int m, int big_m, long n_max) {
  const WeightSeq rm = w.member(m);
  const WeightSeq rM = w.member(big_m);
  const auto xs = x_grid();
  const auto windows = n_windows(n_max);
  std::vector<std::vector<double>> sups(windows.size(), std::vector<double>(xs.size()));
#pragma omp parallel for collapse(2) schedule(dynamic)
  for (std::size_t k = 0; k < windows.size(); ++k) {
    for (std::size_t i = 0; i < xs.size(); ++i) sups[k][i] = window_max(h, rm, rM, xs[i], windows[k]);
  }
  for (const auto& row : sups) {
    for (double v : row) {
      if (std::isnan(v)) return {Truth::unknown, std::nullopt};
    }
  }
  for (double level : kEpsLevels) {
    std::vector<int> threshold(windows.size(), -1);
    for (std::size_t k = 0; k < windows.size(); ++k) {
      for (std::size_t i = 0; i < xs.size() && sups[k][i] < level; ++i) threshold[k] = static_cast<int>(i);
      if (threshold[k] < 0) {
        return {Truth::no, TemperateWitness{m, big_m, xs[0], windows[k].first, windows[k].last, sups[k][0], level}};
      }
    }
    const std::size_t from = windows.size() > 4 ? windows.size() - 4 : 0;
    for (std::size_t k = from + 1; k < windows.size(); ++k) {
      if (threshold[k] < threshold[k - 1]) {
        const auto i = static_cast<std::size_t>(threshold[k] + 1);
        return {Truth::no, TemperateWitness{m, big_m, xs[i], windows[k].first, windows[k].last, sups[k][i], level}};
      }
    }
  }
  return {Truth::yes, std::nullopt};
}

std::optional<Truth> bounded_above(const GrowthExpr& ratio) {
  return truth_of(compare(ratio, GrowthExpr::constant(1.0)).order != Order::greater);
}

std::optional<Truth> bounded_below(const GrowthExpr& ratio) {
  return truth_of(compare(ratio, GrowthExpr::constant(1.0)).order != Order::less);
}

int lowest_degree(const std::vector<double>& c) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] > 0) return static_cast<int>(i);
  }
  return -1;
}

int highest_degree(const std::vector<double>& c) {
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] > 0) return static_cast<int>(i);
  }
  return -1;
}

/// r^M log(1/r^m) -> limit, the growth of log-type maps.
double log_ratio_limit(const GrowthExpr& rm, const GrowthExpr& rM) {
  return limit_of_product(rM, log_expr(pow(rm, -1.0))).hi;
}

std::optional<Truth> exact_moderate(const ScalarMap& g, const GrowthExpr& rm, const GrowthExpr& rM) {
  const GrowthExpr ratio = mul(rM, pow(rm, -1.0));
  switch (g.tag) {
    case ScalarMap::Tag::power:
      if (g.k <= 0) return Truth::yes;
      return bounded_above(ratio);
    case ScalarMap::Tag::poly: {
      const int d = highest_degree(g.coeffs);
      if (d <= 0) return Truth::yes;
      return bounded_above(ratio);
    }
    case ScalarMap::Tag::exp: {
      // x = e^2: r^M exp(2/r^m)
      const auto e = exp_of(pow(rm, -1.0), 2.0);
      if (!e) return std::nullopt;
      return truth_of(compare(mul(rM, *e), GrowthExpr::constant(1.0)).order != Order::greater);
    }
    case ScalarMap::Tag::log1p: return truth_of(std::isfinite(log_ratio_limit(rm, rM)));
    case ScalarMap::Tag::inv_log: return Truth::yes;
    default: return std::nullopt;
  }
}

std::optional<Truth> exact_compatible(const ScalarMap& h, const GrowthExpr& rm, const GrowthExpr& rM) {
  const GrowthExpr ratio = mul(rM, pow(rm, -1.0));
  switch (h.tag) {
    case ScalarMap::Tag::power:
      if (h.k <= 0) return Truth::no;
      return bounded_below(ratio);
    case ScalarMap::Tag::poly: {
      const int d = lowest_degree(h.coeffs);
      if (d <= 0) return Truth::no;  // h(0) > 0, or h = 0 which is not increasing
      return bounded_below(ratio);
    }
    case ScalarMap::Tag::exp: return Truth::no;  // h(0) = 1
    case ScalarMap::Tag::log1p: return bounded_below(ratio);
    case ScalarMap::Tag::inv_log:
      // r^M log(|log x| / r^m) -> 0 at fixed x: the values tend to 1
      if (log_ratio_limit(rm, rM) == 0.0) return Truth::no;
      return std::nullopt;
    default: return std::nullopt;
  }
}

std::string case_label(Direction d) {
  switch (d) {
    case Direction::decreasing: return "case II (r^{m+1} <= r^m)";
    case Direction::increasing: return "case I (r^{m+1} >= r^m)";
    case Direction::single: return "single weight";
  }
  return "?";
}

std::string quantifier_label(Role role, Direction d) {
  const bool m_outer = (role == Role::moderate) == (d != Direction::increasing);
  return m_outer ? "for all m exists M" : "for all M exists m";
}

TemperateCertificate search(const ScalarMap& g, const WeightFamily& w, Role role, const TemperateOptions& opts) {
  for (int m : w.indices(opts.m_max)) {
    if (w.member(m).egorov_m()) throw std::invalid_argument("scalar map checks need positive weights (no Egorov steps)");
  }
  TemperateCertificate c;
  c.role = role;
  c.family_case = w.direction();
  c.map = g.label;
  c.family = w.name();
  c.m_bound = opts.m_max;
  c.n_max = opts.n_max;
  std::string why;
  if (!check_monotone(g, &why)) {
    c.status = Status::refuted;
    c.note = "not increasing: " + why;
    return c;
  }

  const auto indices = w.indices(opts.m_max);
  const bool m_outer = (role == Role::moderate) == (w.direction() != Direction::increasing);
  bool all_exact = true;
  bool any_unknown = false;
  auto evaluate = [&](int m, int big_m) -> PairResult {
    if (!opts.numeric_only) {
      const WeightSeq wm = w.member(m);
      const WeightSeq wM = w.member(big_m);
      const GrowthExpr* rm = wm.expr();
      const GrowthExpr* rM = wM.expr();
      if (rm && rM) {
        const auto t = role == Role::moderate ? exact_moderate(g, *rm, *rM) : exact_compatible(g, *rm, *rM);
        if (t) {
          PairResult r{*t, std::nullopt};
          if (*t == Truth::no) {
            // a concrete window for replay
            r.witness = (role == Role::moderate ? numeric_moderate(g, w, m, big_m, opts.n_max)
                                                : numeric_compatible(g, w, m, big_m, opts.n_max))
                            .witness;
          }
          return r;
        }
      }
    }
    all_exact = false;
    return role == Role::moderate ? numeric_moderate(g, w, m, big_m, opts.n_max)
                                  : numeric_compatible(g, w, m, big_m, opts.n_max);
  };

  for (int outer : indices) {
    std::vector<int> candidates{outer};
    for (int i : indices) {
      if (i != outer) candidates.push_back(i);
    }
    bool found = false;
    bool outer_unknown = false;
    std::optional<TemperateWitness> first_witness;
    for (int inner : candidates) {
      const int m = m_outer ? outer : inner;
      const int big_m = m_outer ? inner : outer;
      const PairResult r = evaluate(m, big_m);
      if (r.holds == Truth::yes) {
        c.trace.emplace_back(m, big_m);
        found = true;
        break;
      }
      if (r.holds == Truth::unknown) outer_unknown = true;
      if (!first_witness && r.witness) first_witness = r.witness;
    }
    if (!found) {
      if (outer_unknown) {
        any_unknown = true;
        continue;
      }
      c.status = Status::refuted;
      c.exact = all_exact;
      c.witness = first_witness;
      c.note = fmt::format("no {} in range works for {} = {}", m_outer ? "M" : "m", m_outer ? "m" : "M", outer);
      if (!c.witness) c.note += " (no numeric window within the probe bounds)";
      return c;
    }
  }
  c.exact = all_exact;
  c.status = any_unknown ? Status::inconclusive : Status::certified;
  if (any_unknown) c.note = "some indices could not be evaluated";
  return c;
}

}  // namespace

// ---------------------------------------------------------------- scalar maps

double ScalarMap::operator()(double x) const {
  if (x <= 0.0) return std::exp(log_of_exp(-kInf));
  return std::exp(log_of_exp(std::log(x)));
}

ScalarMap ScalarMap::power(double k) {
  ScalarMap g;
  g.tag = Tag::power;
  g.k = k;
  g.log_of_exp = [k](double t) { return k * t; };
  g.monotone = k > 0;
  g.label = k == 1.0 ? "x" : fmt::format("x^{}", k);
  return g;
}

ScalarMap ScalarMap::exp() {
  ScalarMap g;
  g.tag = Tag::exp;
  g.log_of_exp = [](double t) { return std::exp(t); };
  g.label = "exp(x)";
  return g;
}

ScalarMap ScalarMap::log1p() {
  ScalarMap g;
  g.tag = Tag::log1p;
  g.log_of_exp = [](double t) {
    if (t > 30) return std::log(t + std::log1p(std::exp(-t)));
    if (t < -30) return t;
    return std::log(std::log1p(std::exp(t)));
  };
  g.label = "log(1+x)";
  return g;
}

ScalarMap ScalarMap::poly(std::vector<double> coeffs) {
  for (double c : coeffs) {
    if (c < 0) throw std::invalid_argument("poly maps need nonnegative coefficients");
  }
  ScalarMap g;
  g.tag = Tag::poly;
  g.coeffs = coeffs;
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    if (i == 0) parts.push_back(fmt::format("{}", coeffs[i]));
    else parts.push_back(fmt::format("{}x{}", coeffs[i] == 1 ? "" : fmt::format("{}", coeffs[i]),
                                     i == 1 ? "" : fmt::format("^{}", i)));
  }
  g.label = parts.empty() ? "0" : fmt::format("{}", fmt::join(parts, " + "));
  g.log_of_exp = [coeffs = std::move(coeffs)](double t) { return log_sum_exp(coeffs, t); };
  return g;
}

ScalarMap ScalarMap::inv_log() {
  ScalarMap g;
  g.tag = Tag::inv_log;
  g.log_of_exp = [](double t) { return t < -1.0 ? -std::log(-t) : 0.0; };
  g.label = "1/|log x|";
  return g;
}

ScalarMap ScalarMap::compose(const ScalarMap& outer, const ScalarMap& inner) {
  ScalarMap g;
  g.tag = Tag::composition;
  g.log_of_exp = [o = outer.log_of_exp, i = inner.log_of_exp](double t) { return o(i(t)); };
  g.monotone = outer.monotone && inner.monotone;
  g.label = fmt::format("({})o({})", outer.label, inner.label);
  return g;
}

ScalarMap ScalarMap::black_box(std::function<double(double)> fn, std::string label) {
  ScalarMap g;
  g.tag = Tag::black_box;
  g.log_of_exp = [fn = std::move(fn)](double t) { return std::log(fn(std::exp(t))); };
  g.label = std::move(label);
  return g;
}

bool check_monotone(const ScalarMap& g, std::string* witness) {
  double prev = -kInf;
  double prev_x = 0.0;
  for (int i = -80; i <= 80; ++i) {
    const double x = std::pow(10.0, i / 10.0);
    const double v = g.log_of_exp(std::log(x));
    if (v < prev - 1e-12 * std::max(1.0, std::abs(prev))) {
      if (witness) *witness = fmt::format("g({:.9g}) < g({:.9g})", x, prev_x);
      return false;
    }
    prev = v;
    prev_x = x;
  }
  return true;
}

// ---------------------------------------------------------------- certificates

std::string to_string(TemperateCertificate::Status s) {
  switch (s) {
    case Status::certified: return "certified";
    case Status::refuted: return "refuted";
    case Status::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string TemperateCertificate::format() const {
  std::string out = fmt::format("{} {} on {}, {} ({}): {}{}\n", role == Role::moderate ? "moderate" : "compatible",
                                map, family, case_label(family_case), quantifier_label(role, family_case),
                                to_string(status), exact ? " (exact)" : " (numeric)");
  if (!trace.empty()) {
    std::vector<std::string> pairs;
    for (const auto& [m, big_m] : trace) pairs.push_back(fmt::format("(m={}, M={})", m, big_m));
    out += fmt::format("trace: {}\n", fmt::join(pairs, " "));
  }
  if (witness) {
    out += fmt::format("witness: m={} M={} x={:.9g} n in [{}, {}] r^M log g = {:.9g} (bound {:.9g})\n", witness->m,
                       witness->big_m, witness->x, witness->n_first, witness->n_last, witness->log_value,
                       witness->bound);
  }
  if (!note.empty()) out += "note: " + note + "\n";
  out += fmt::format("bounds: m, M <= {}, x in [1e-8, 1e8], n <= {}\n", m_bound, n_max);
  return out;
}

std::string TemperateCertificate::to_json() const {
  nlohmann::json j;
  j["role"] = role == Role::moderate ? "moderate" : "compatible";
  j["status"] = to_string(status);
  j["map"] = map;
  j["family"] = family;
  j["case"] = case_label(family_case);
  j["exact"] = exact;
  j["trace"] = nlohmann::json::array();
  for (const auto& [m, big_m] : trace) j["trace"].push_back({{"m", m}, {"M", big_m}});
  if (witness) {
    j["witness"] = {{"m", witness->m},        {"M", witness->big_m},         {"x", witness->x},
                    {"n_first", witness->n_first}, {"n_last", witness->n_last}, {"log_value", witness->log_value},
                    {"bound", witness->bound}};
  }
  j["note"] = note;
  j["m_bound"] = m_bound;
  j["n_max"] = n_max;
  return j.dump();
}

TemperateCertificate check_moderate(const ScalarMap& g, const WeightFamily& w, const TemperateOptions& opts) {
  return search(g, w, Role::moderate, opts);
}

TemperateCertificate check_compatible(const ScalarMap& h, const WeightFamily& w, const TemperateOptions& opts) {
  return search(h, w, Role::compatible, opts);
}

bool replay(const TemperateCertificate& c, const ScalarMap& g, const WeightFamily& w) {
  if (!c.witness) return false;
  const TemperateWitness& t = *c.witness;
  NWindow win{t.n_first, t.n_last, {}};
  for (long n = t.n_first; n <= t.n_last; n = std::max(n + 1, n + (t.n_last - t.n_first) / 64)) win.ns.push_back(n);
  win.ns.push_back(t.n_last);
  const double v = window_max(g, w.member(t.m), w.member(t.big_m), t.x, win);
  return c.role == Role::moderate ? v > t.bound : v >= t.bound;
}

// ---------------------------------------------------------------- function maps

namespace {

SmoothSeq expm1_seq(const SmoothSeq& k) {
  SmoothSeq e = exp_seq(k);
  SmoothSeq s = e;
  s.jet = [e, k](long n, double x, std::span<double> out) {
    e.jet(n, x, out);
    double v = 0.0;
    k.jet(n, x, std::span<double>(&v, 1));
    out[0] = std::expm1(v);
  };
  s.support = k.support;
  s.label = fmt::format("expm1({})", k.label);
  return s;
}

SmoothSeq times(const SmoothSeq& f, double c, const std::string& label) {
  return scaled(f, [c](long) { return c; }, label);
}

}  // namespace

FunMap FunMap::identity() {
  FunMap phi;
  phi.name = "identity";
  phi.apply = [](const SmoothSeq& f) { return f; };
  phi.increment = [](const SmoothSeq&, const SmoothSeq& k) { return k; };
  phi.p_order = [](int nu) { return nu; };
  phi.p_weight = [](int) { return 1.0; };
  phi.g_alpha = ScalarMap::identity();
  phi.g_beta = ScalarMap::poly({1.0});
  phi.h = ScalarMap::identity();
  return phi;
}

FunMap FunMap::square() {
  FunMap phi;
  phi.name = "square";
  phi.apply = [](const SmoothSeq& f) { return product(f, f); };
  phi.increment = [](const SmoothSeq& f, const SmoothSeq& k) { return product(sum(times(f, 2.0, "2"), k), k); };
  phi.p_order = [](int nu) { return nu; };
  phi.p_weight = [](int nu) { return std::ldexp(1.0, nu); };
  phi.g_alpha = ScalarMap::power(2.0);
  phi.g_beta = ScalarMap::poly({1.0, 2.0});
  phi.h = ScalarMap::poly({0.0, 1.0, 1.0});
  return phi;
}

FunMap FunMap::derivative() {
  FunMap phi;
  phi.name = "d/dx";
  phi.apply = [](const SmoothSeq& f) { return ultraseq::derivative(f); };
  phi.increment = [](const SmoothSeq&, const SmoothSeq& k) { return ultraseq::derivative(k); };
  phi.p_order = [](int nu) { return nu + 1; };
  phi.p_weight = [](int) { return 1.0; };
  phi.g_alpha = ScalarMap::identity();
  phi.g_beta = ScalarMap::poly({1.0});
  phi.h = ScalarMap::identity();
  return phi;
}

FunMap FunMap::exponential() {
  FunMap phi;
  phi.name = "exp";
  phi.apply = [](const SmoothSeq& f) { return exp_seq(f); };
  phi.increment = [](const SmoothSeq& f, const SmoothSeq& k) { return product(exp_seq(f), expm1_seq(k)); };
  phi.p_order = [](int nu) { return nu; };
  phi.p_weight = [](int) { return 1.0; };
  phi.g_alpha = ScalarMap::power(4.0);
  phi.g_beta = ScalarMap::power(4.0);
  phi.h = ScalarMap::identity();
  return phi;
}

std::vector<SmoothSeq> function_corpus(int count, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const SmoothSeq delta = mollify(Mollifier::standard());
  std::vector<SmoothSeq> out;
  for (int i = 0; i < count; ++i) {
    switch (rng() % 5) {
      case 0: {
        const double amp = std::exp(std::log(0.1) + u(rng) * std::log(300.0));
        out.push_back(times(constant_seq(sine()), amp, fmt::format("{:.4g}", amp)));
        break;
      }
      case 1:
        out.push_back(constant_seq(polynomial({4 * u(rng) - 2, 4 * u(rng) - 2, 4 * u(rng) - 2})));
        break;
      case 2: {
        const double amp = 0.1 + 9.9 * u(rng);
        out.push_back(times(constant_seq(bump(2 * u(rng) - 1, 0.3 + 1.2 * u(rng))), amp, fmt::format("{:.4g}", amp)));
        break;
      }
      case 3: out.push_back(delta); break;
      default: {
        const double amp = 0.1 + 1.9 * u(rng);
        out.push_back(times(reindexed(delta, 2 + static_cast<long>(rng() % 2)), amp, fmt::format("{:.4g}", amp)));
        break;
      }
    }
  }
  return out;
}

std::string TemperateReport::format() const {
  std::string out = fmt::format("continuously temperate {}: {}\n", map, to_string(status));
  for (const auto& b : bounds) out += b.format();
  out += fmt::format("(alpha) checks: {}, (beta) checks: {}\n", alpha_checks, beta_checks);
  if (!witness.empty()) out += "witness: " + witness + "\n";
  if (!note.empty()) out += "note: " + note + "\n";
  return out;
}

TemperateReport check_temperate(const FunMap& phi, const WeightFamily& w, const TemperateCheckOptions& opts) {
  if (!phi.p_order || !phi.p_weight) throw std::invalid_argument(phi.name + " has no seminorm pairing");
  TemperateReport report;
  report.map = phi.name;
  report.bounds.push_back(check_moderate(phi.g_alpha, w, opts.scalar));
  report.bounds.push_back(check_moderate(phi.g_beta, w, opts.scalar));
  report.bounds.push_back(check_compatible(phi.h, w, opts.scalar));
  for (const auto& b : report.bounds) {
    if (b.status == Status::refuted) {
      report.status = Status::refuted;
      report.note = fmt::format("declared bound {} is not {}", b.map, b.role == Role::moderate ? "moderate" : "compatible");
      return report;
    }
    if (b.status == Status::inconclusive) {
      report.status = Status::inconclusive;
      report.note = "declared bound " + b.map + " not certified";
      return report;
    }
  }

  const auto corpus = function_corpus(2 * opts.pairs, opts.seed);
  auto fail = [&](const std::string& which, const SmoothSeq& f, const SmoothSeq* k, long n, int nu, double lhs,
                  double rhs) {
    report.status = Status::refuted;
    report.witness = fmt::format("({}) f = {}{}, n = {}, q = p_{}: {:.9g} > {:.9g}", which, f.label,
                                 k ? ", k = " + k->label : std::string(), n, nu, lhs, rhs);
  };
  for (int i = 0; i < opts.pairs; ++i) {
    const SmoothSeq& f = corpus[2 * i];
    const SmoothSeq& k = corpus[2 * i + 1];
    const SmoothSeq image = phi.apply(f);
    const SmoothSeq inc = phi.increment(f, k);
    for (long n : opts.indices) {
      for (int nu = 0; nu <= opts.nu_max; ++nu) {
        const SeminormSpec p{phi.p_order(nu)};
        const double pf = phi.p_weight(nu) * seminorm(f, n, p);
        const double pk = phi.p_weight(nu) * seminorm(k, n, p);
        const double lhs_a = seminorm(image, n, {nu});
        const double rhs_a = phi.g_alpha(pf);
        ++report.alpha_checks;
        if (!(lhs_a <= rhs_a * (1 + kLatticeSlack) + 1e-12)) {
          fail("alpha", f, nullptr, n, nu, lhs_a, rhs_a);
          return report;
        }
        const double lhs_b = seminorm(inc, n, {nu});
        const double rhs_b = phi.g_beta(pf) * phi.h(pk);
        ++report.beta_checks;
        if (!(lhs_b <= rhs_b * (1 + kLatticeSlack) + 1e-12)) {
          fail("beta", f, &k, n, nu, lhs_b, rhs_b);
          return report;
        }
      }
    }
  }
  report.status = Status::certified;
  report.note = fmt::format("(alpha), (beta) verified on {} corpus pairs, n in {{{}}}, q = p_nu for nu <= {}", opts.pairs,
                            fmt::join(opts.indices, ", "), opts.nu_max);
  return report;
}

ExtendResult extend(const FunMap& phi, const TemperateReport& certificate, const SmoothSeq& f, const WeightFamily& w,
                    int nu_max, const FunOptions& opts) {
  if (certificate.status != Status::certified || certificate.map != phi.name) {
    throw std::invalid_argument("extend needs a certified temperate report for " + phi.name);
  }
  ExtendResult r{phi.apply(f), {}};
  r.classification = classify_fun(r.image, nu_max, w, mode_for(w), opts);
  const Verdict v = r.classification.verdict;
  if (v != Verdict::moderate && v != Verdict::negligible && v != Verdict::boundary) {
    throw std::runtime_error(fmt::format("{}({}) failed the moderateness probe:\n{}", phi.name, f.label,
                                         r.classification.format()));
  }
  return r;
}

std::string F2Report::format() const {
  return fmt::format("phi(f + j) - phi(f) negligible: {}\n{}", to_string(pass), classification.format());
}

F2Report verify_f2(const FunMap& phi, const SmoothSeq& f, const SmoothSeq& j, const WeightFamily& w, int nu_max,
                   const FunOptions& opts) {
  const Classification cj = classify_fun(j, nu_max, w, mode_for(w), opts);
  if (cj.verdict != Verdict::negligible) {
    throw std::invalid_argument(fmt::format("{} is not negligible ({})", j.label, to_string(cj.verdict)));
  }
  F2Report r;
  r.classification = classify_fun(phi.increment(f, j), nu_max, w, mode_for(w), opts);
  switch (r.classification.verdict) {
    case Verdict::negligible: r.pass = Truth::yes; break;
    case Verdict::inconclusive: r.pass = Truth::unknown; break;
    default: r.pass = Truth::no; break;
  }
  return r;
}

}  // namespace ultraseq
