#include "ultraseq/genfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "ultraseq/kernels.hpp"

namespace ultraseq {

namespace {

constexpr double kDefaultSpacing = 1.0 / 1024.0;
constexpr double kPairingTolerance = 1e-9;
constexpr int kOpenOrder = 64;  // "all orders" for polynomials and trig functions

using Poly = std::vector<double>;

Poly poly_derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(static_cast<double>(i) * p[i]);
  return d;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Poly poly_add(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0.0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

double poly_eval(const Poly& p, double x) {
  double v = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
  return v;
}

// Q_k with d^k/dy^k exp(-1/u) = Q_k(y) u^{-2k} exp(-1/u), u = 1 - y^2.
std::vector<Poly> bump_polys(int max_order) {
  const Poly u{1.0, 0.0, -1.0};
  const Poly u2 = poly_mul(u, u);
  std::vector<Poly> q{{1.0}};
  for (int k = 0; k < max_order; ++k) {
    const Poly& qk = q.back();
    Poly next = poly_mul(poly_derivative(qk), u2);
    next = poly_add(next, poly_mul(Poly{0.0, 4.0 * k}, poly_mul(u, qk)));
    next = poly_add(next, poly_mul(Poly{0.0, -2.0}, qk));
    q.push_back(std::move(next));
  }
  return q;
}

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

void check_order(std::span<double> out, int max_order, const std::string& label) {
  if (static_cast<int>(out.size()) > max_order + 1) {
    throw std::invalid_argument(fmt::format("{} supports derivatives up to order {}", label, max_order));
  }
}

kernels::QuadratureResult integrate(const std::function<double(double)>& f, const Interval& on, double tol) {
  return kernels::integrate_panels(f, on.lo, on.hi, 8, tol);
}

}  // namespace

// ---------------------------------------------------------------- functions

double SmoothFn::operator()(double x, int alpha) const {
  std::vector<double> out(static_cast<std::size_t>(alpha) + 1);
  jet(x, out);
  return out.back();
}

SmoothFn sine() {
  SmoothFn f;
  f.jet = [](double x, std::span<double> out) {
    const double s = std::sin(x);
    const double c = std::cos(x);
    const double cycle[4] = {s, c, -s, -c};
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = cycle[k % 4];
  };
  f.max_order = kOpenOrder;
  f.label = "sin";
  return f;
}

SmoothFn polynomial(std::vector<double> coeffs) {
  SmoothFn f;
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < coeffs.size(); ++i) parts.push_back(fmt::format("{}x^{}", coeffs[i], i));
  f.label = fmt::format("poly({})", fmt::join(parts, " + "));
  f.jet = [coeffs = std::move(coeffs)](double x, std::span<double> out) {
    Poly p = coeffs;
    for (std::size_t k = 0; k < out.size(); ++k) {
      out[k] = poly_eval(p, x);
      p = poly_derivative(p);
    }
  };
  f.max_order = kOpenOrder;
  return f;
}

SmoothFn bump(double center, double width, int max_order) {
  if (!(width > 0)) throw std::invalid_argument("bump width must be positive");
  SmoothFn f;
  f.max_order = max_order;
  f.support = Interval{center - width, center + width};
  f.label = fmt::format("bump({}, {})", center, width);
  f.jet = [q = bump_polys(max_order), center, width, max_order, label = f.label](double x, std::span<double> out) {
    check_order(out, max_order, label);
    const double y = (x - center) / width;
    if (std::abs(y) >= 1.0) {
      std::fill(out.begin(), out.end(), 0.0);
      return;
    }
    const double u = 1.0 - y * y;
    const double lu = std::log(u);
    double scale = 1.0;
    for (std::size_t k = 0; k < out.size(); ++k) {
      out[k] = std::exp(-1.0 / u - 2.0 * static_cast<double>(k) * lu) * poly_eval(q[k], y) * scale;
      scale /= width;
    }
  };
  return f;
}

// ---------------------------------------------------------------- sequences

double SmoothSeq::value(long n, double x, int alpha) const {
  std::vector<double> out(static_cast<std::size_t>(alpha) + 1);
  jet(n, x, out);
  return out.back();
}

namespace {

double spacing_of(const SmoothSeq& f, long n) { return f.spacing ? f.spacing(n) : kDefaultSpacing; }

std::function<double(long)> min_spacing(const SmoothSeq& f, const SmoothSeq& g) {
  if (!f.spacing && !g.spacing) return {};
  return [f, g](long n) { return std::min(spacing_of(f, n), spacing_of(g, n)); };
}

// Hull of the fine regions; a sequence with its own spacing but no region
// needs the fine grid everywhere.
std::function<std::optional<Interval>(long)> fine_hull(const SmoothSeq& f, const SmoothSeq& g) {
  if ((f.spacing && !f.fine_region) || (g.spacing && !g.fine_region)) return {};
  if (!f.fine_region && !g.fine_region) return {};
  return [f, g](long n) -> std::optional<Interval> {
    const auto a = f.fine_region ? f.fine_region(n) : std::nullopt;
    const auto b = g.fine_region ? g.fine_region(n) : std::nullopt;
    if (a && b) return Interval{std::min(a->lo, b->lo), std::max(a->hi, b->hi)};
    return a ? a : b;
  };
}

}  // namespace

SmoothSeq constant_seq(const SmoothFn& f) {
  SmoothSeq s;
  s.jet = [f](long, double x, std::span<double> out) { f.jet(x, out); };
  s.max_order = f.max_order;
  if (f.support) s.support = [sup = *f.support](long) { return std::optional<Interval>(sup); };
  s.label = f.label;
  return s;
}

SmoothSeq zero_seq() {
  SmoothSeq s;
  s.jet = [](long, double, std::span<double> out) { std::fill(out.begin(), out.end(), 0.0); };
  s.max_order = kOpenOrder;
  s.support = [](long) { return std::optional<Interval>(Interval{0.0, 0.0}); };
  s.label = "0";
  return s;
}

SmoothSeq sum(const SmoothSeq& f, const SmoothSeq& g) {
  SmoothSeq s;
  s.jet = [f, g](long n, double x, std::span<double> out) {
    std::vector<double> tmp(out.size());
    f.jet(n, x, out);
    g.jet(n, x, tmp);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += tmp[k];
  };
  s.max_order = std::min(f.max_order, g.max_order);
  if (f.support && g.support) {
    s.support = [f, g](long n) -> std::optional<Interval> {
      const auto a = f.support(n);
      const auto b = g.support(n);
      if (!a || !b) return std::nullopt;
      if (a->empty()) return b;
      if (b->empty()) return a;
      return Interval{std::min(a->lo, b->lo), std::max(a->hi, b->hi)};
    };
  }
  s.spacing = min_spacing(f, g);
  s.fine_region = fine_hull(f, g);
  s.label = fmt::format("({} + {})", f.label, g.label);
  return s;
}

SmoothSeq difference(const SmoothSeq& f, const SmoothSeq& g) {
  SmoothSeq out = sum(f, scaled(g, [](long) { return -1.0; }, "-1"));
  out.label = fmt::format("({} - {})", f.label, g.label);
  return out;
}

SmoothSeq product(const SmoothSeq& f, const SmoothSeq& g) {
  SmoothSeq s;
  s.jet = [f, g](long n, double x, std::span<double> out) {
    std::vector<double> a(out.size());
    std::vector<double> b(out.size());
    f.jet(n, x, a);
    g.jet(n, x, b);
    for (std::size_t k = 0; k < out.size(); ++k) {
      double v = 0.0;
      for (std::size_t j = 0; j <= k; ++j) v += binomial(static_cast<int>(k), static_cast<int>(j)) * a[j] * b[k - j];
      out[k] = v;
    }
  };
  s.max_order = std::min(f.max_order, g.max_order);
  if (f.support || g.support) {
    s.support = [f, g](long n) -> std::optional<Interval> {
      const auto a = f.support ? f.support(n) : std::nullopt;
      const auto b = g.support ? g.support(n) : std::nullopt;
      if (a && b) return a->intersect(*b);
      return a ? a : b;
    };
  }
  s.spacing = min_spacing(f, g);
  s.fine_region = fine_hull(f, g);
  s.label = fmt::format("{}*{}", f.label, g.label);
  return s;
}

SmoothSeq scaled(const SmoothSeq& f, std::function<double(long)> c, std::string c_label) {
  SmoothSeq s = f;
  s.jet = [f, c](long n, double x, std::span<double> out) {
    const double cn = c(n);
    if (cn == 0.0) {
      std::fill(out.begin(), out.end(), 0.0);
      return;
    }
    f.jet(n, x, out);
    for (double& v : out) v *= cn;
  };
  s.label = fmt::format("{}*{}", c_label, f.label);
  return s;
}

SmoothSeq derivative(const SmoothSeq& f) {
  if (f.max_order < 1) throw std::invalid_argument(f.label + " has no derivative available");
  SmoothSeq s = f;
  s.jet = [f](long n, double x, std::span<double> out) {
    std::vector<double> tmp(out.size() + 1);
    f.jet(n, x, tmp);
    std::copy(tmp.begin() + 1, tmp.end(), out.begin());
  };
  s.max_order = f.max_order - 1;
  s.label = f.label + "'";
  return s;
}

SmoothSeq exp_seq(const SmoothSeq& f) {
  SmoothSeq s;
  s.jet = [f](long n, double x, std::span<double> out) {
    std::vector<double> a(out.size());
    f.jet(n, x, a);
    out[0] = std::exp(a[0]);
    for (std::size_t k = 0; k + 1 < out.size(); ++k) {
      double v = 0.0;
      for (std::size_t j = 0; j <= k; ++j) v += binomial(static_cast<int>(k), static_cast<int>(j)) * a[j + 1] * out[k - j];
      out[k + 1] = v;
    }
  };
  s.max_order = f.max_order;
  s.spacing = f.spacing;
  s.fine_region = f.fine_region;
  s.label = fmt::format("exp({})", f.label);
  return s;
}

SmoothSeq reindexed(const SmoothSeq& f, long k) {
  SmoothSeq s = f;
  s.jet = [f, k](long n, double x, std::span<double> out) { f.jet(k * n, x, out); };
  if (f.support) s.support = [f, k](long n) { return f.support(k * n); };
  if (f.spacing) s.spacing = [f, k](long n) { return f.spacing(k * n); };
  if (f.fine_region) s.fine_region = [f, k](long n) { return f.fine_region(k * n); };
  s.label = fmt::format("{}[{}n]", f.label, k);
  return s;
}

// ---------------------------------------------------------------- mollifiers

int moment_class(const SmoothFn& phi, int q_max, double tol) {
  const Interval on = phi.support.value_or(Interval{-1.0, 1.0});
  const double mass = integrate([&](double x) { return phi(x); }, on, 1e-13).value;
  if (std::abs(mass - 1.0) > tol) {
    throw std::invalid_argument(fmt::format("{} is not a mollifier: integral {:.9g}", phi.label, mass));
  }
  int q = 0;
  for (int k = 1; k <= q_max; ++k) {
    const double m = integrate([&](double x) { return std::pow(x, k) * phi(x); }, on, 1e-13).value;
    if (std::abs(m) > tol) break;
    q = k;
  }
  return q;
}

Mollifier Mollifier::from_polynomial(std::vector<double> coeffs, int max_order) {
  const SmoothFn b = bump(0.0, 1.0, max_order);
  const SmoothFn p = polynomial(coeffs);
  const Interval on{-1.0, 1.0};
  const double mass = integrate([&](double x) { return poly_eval(coeffs, x) * b(x); }, on, 1e-14).value;
  if (mass == 0.0) throw std::invalid_argument("profile has zero integral");
  SmoothFn phi;
  phi.max_order = max_order;
  phi.support = on;
  phi.label = coeffs.size() == 1 ? "bump" : fmt::format("({})*bump", fmt::join(coeffs, ", "));
  phi.jet = [b, p, mass](double x, std::span<double> out) {
    std::vector<double> bj(out.size());
    std::vector<double> pj(out.size());
    b.jet(x, bj);
    p.jet(x, pj);
    for (std::size_t k = 0; k < out.size(); ++k) {
      double v = 0.0;
      for (std::size_t j = 0; j <= k; ++j) v += binomial(static_cast<int>(k), static_cast<int>(j)) * pj[j] * bj[k - j];
      out[k] = v / mass;
    }
  };
  Mollifier m;
  m.profile = phi;
  m.moment_class = ultraseq::moment_class(phi, 8, 1e-8);
  m.label = phi.label;
  return m;
}

Mollifier Mollifier::standard(int max_order) {
  Mollifier m = from_polynomial({1.0}, max_order);
  m.label = m.profile.label = "standard bump";
  return m;
}

Mollifier Mollifier::corrected(int max_order) {
  const SmoothFn b = bump(0.0, 1.0, max_order);
  const Interval on{-1.0, 1.0};
  const double m2 = integrate([&](double x) { return x * x * b(x); }, on, 1e-14).value;
  const double m4 = integrate([&](double x) { return x * x * x * x * b(x); }, on, 1e-14).value;
  // orthogonal to x by symmetry; the x^2 coefficient kills the second moment
  Mollifier m = from_polynomial({1.0, 0.0, -m2 / m4}, max_order);
  m.label = m.profile.label = "corrected bump (1 + c x^2)";
  return m;
}

SmoothFn mollify(const Mollifier& phi, long n) {
  SmoothFn f;
  const double scale = static_cast<double>(n);
  f.jet = [p = phi.profile, scale](double x, std::span<double> out) {
    p.jet(scale * x, out);
    double factor = scale;
    for (double& v : out) {
      v *= factor;
      factor *= scale;
    }
  };
  f.max_order = phi.profile.max_order;
  f.support = Interval{-1.0 / scale, 1.0 / scale};
  f.label = fmt::format("{}_{}", phi.label, n);
  return f;
}

SmoothSeq mollify(const Mollifier& phi) {
  SmoothSeq s;
  s.jet = [p = phi.profile](long n, double x, std::span<double> out) {
    const double scale = static_cast<double>(n);
    p.jet(scale * x, out);
    double factor = scale;
    for (double& v : out) {
      v *= factor;
      factor *= scale;
    }
  };
  s.max_order = phi.profile.max_order;
  s.support = [](long n) { return std::optional<Interval>(Interval{-1.0 / n, 1.0 / n}); };
  s.spacing = [](long n) { return std::min(kDefaultSpacing, 1.0 / (256.0 * n)); };
  s.fine_region = s.support;
  s.label = "delta_n";
  return s;
}

// ---------------------------------------------------------------- seminorms

double seminorm(const SmoothSeq& f, long n, const SeminormSpec& spec) {
  if (spec.order > f.max_order) {
    throw std::invalid_argument(fmt::format("p_{} needs derivatives up to {} but {} has {}", spec.order, spec.order,
                                            f.label, f.max_order));
  }
  const double radius = spec.effective_radius();
  Interval domain{-radius, radius};
  if (f.support) {
    if (auto s = f.support(n)) domain = domain.intersect(*s);
  }
  if (domain.empty()) return 0.0;
  std::vector<double> xs{domain.lo, domain.hi};
  auto lattice = [&xs](const Interval& on, double h) {
    for (double i = std::ceil(on.lo / h); i * h <= on.hi; i += 1.0) xs.push_back(i * h);
  };
  if (spec.h > 0) {
    lattice(domain, spec.h);
  } else if (f.spacing && f.fine_region) {
    lattice(domain, kDefaultSpacing);
    if (auto fine = f.fine_region(n)) {
      const Interval on = domain.intersect(*fine);
      if (!on.empty()) lattice(on, f.spacing(n));
    }
  } else {
    lattice(domain, spacing_of(f, n));
  }
  const kernels::JetFn jet = [&f, n](double x, std::span<double> out) { f.jet(n, x, out); };
  return kernels::grid_sup(jet, spec.order, xs);
}

SeqRep seminorm_channel(const SmoothSeq& f, int nu, const FunOptions& opts) {
  if (nu > f.max_order) throw std::invalid_argument(fmt::format("p_{} exceeds the derivatives of {}", nu, f.label));
  return SeqRep::sampled([f, nu](long n) { return seminorm(f, n, SeminormSpec{nu}); }, 1, opts.n_max,
                         fmt::format("p_{}({})", nu, f.label), opts.samples_per_window);
}

Classification classify_fun(const SmoothSeq& f, int nu_max, const WeightFamily& w, Mode mode, const FunOptions& opts) {
  Bundle channels;
  for (int nu = 0; nu <= nu_max; ++nu) channels.push_back(seminorm_channel(f, nu, opts));
  ClassifyOptions co;
  co.tail.n_max = opts.n_max;
  co.tail.samples_per_window = opts.samples_per_window;
  return classify(channels, w, mode, co);
}

// ---------------------------------------------------------------- pairings

TestFunction test_bump(double center, double width) {
  SmoothFn b = bump(center, width);
  return {b, *b.support, b.label};
}

const std::vector<TestFunction>& default_test_set() {
  static const std::vector<TestFunction> tests{test_bump(0.0, 1.0), test_bump(0.25, 0.5), test_bump(-0.3, 0.8),
                                               test_bump(0.5, 1.5), test_bump(0.0, 0.2)};
  return tests;
}

double pairing(const SmoothSeq& f, long n, const TestFunction& psi) {
  Interval domain = psi.support;
  if (f.support) {
    if (auto s = f.support(n)) domain = domain.intersect(*s);
  }
  if (domain.empty()) return 0.0;
  auto integrand = [&](double x) { return f.value(n, x) * psi.psi(x); };
  kernels::QuadratureResult q = kernels::integrate_adaptive(integrand, domain.lo, domain.hi, kPairingTolerance);
  if (!q.converged) {
    q = kernels::integrate_adaptive(integrand, domain.lo, domain.hi, kPairingTolerance * std::max(1.0, std::abs(q.value)));
  }
  if (!q.converged) {
    throw std::runtime_error(fmt::format("quadrature of <{}, {}> at n = {} did not converge (error {:.3g})", f.label,
                                         psi.label, n, q.error));
  }
  return q.value;
}

std::string FunAssocVerdict::format() const {
  std::string out = fmt::format("{} with respect to the given test set ({} test functions)",
                                holds == Truth::yes ? "holds" : holds == Truth::no ? "fails" : "inconclusive",
                                per_test.size());
  for (const auto& v : per_test) out += "\n  " + v.format();
  return out;
}

FunAssocVerdict weak_assoc_fun(const SmoothSeq& f, const SmoothSeq& g, const AssocKind& kind,
                               const std::vector<TestFunction>& tests, const SpacePtr& space, const FunOptions& opts) {
  if (tests.empty()) throw std::invalid_argument("weak association needs at least one test function");
  const SmoothSeq d = difference(f, g);
  const GenNumber zero = GenNumber::symbolic(GrowthExpr::zero(), 1, space);
  FunAssocVerdict out;
  out.holds = Truth::yes;
  for (const auto& psi : tests) {
    const GenNumber c = GenNumber::sampled([d, psi](long n) { return std::complex<double>(pairing(d, n, psi), 0.0); }, 2,
                                           opts.n_max, space, fmt::format("<{}, {}>", d.label, psi.label),
                                           opts.samples_per_window);
    AssocVerdict v = associate(c, zero, kind);
    v.kind = fmt::format("{} [psi = {}]", v.kind, psi.label);
    out.holds = truth_and(out.holds, v.holds);
    out.per_test.push_back(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------- extracted sequences

std::string ExtractedReport::format() const {
  std::string out = fmt::format("extracted sequences, nu = {}, N = {} (finite probe of A_N)\n", nu, big_n);
  for (const auto& e : entries) {
    out += fmt::format("phi = {} (class {}): {}; in F_(nu,N,phi): {}; in K_(nu,N,phi): {}\n", e.probe, e.moment_class,
                       e.value.describe(), to_string(e.in_f), to_string(e.in_k));
  }
  return out;
}

ExtractedReport extracted_membership(const std::function<SmoothSeq(const Mollifier&)>& family, int nu, int big_n,
                                     const std::vector<Mollifier>& probes, const FunOptions& opts) {
  ExtractedReport report;
  report.nu = nu;
  report.big_n = big_n;
  const WeightSeq r = catalog("colombeau").member(1);
  TailOptions tail;
  tail.n_max = opts.n_max;
  tail.samples_per_window = opts.samples_per_window;
  for (const auto& phi : probes) {
    if (phi.moment_class < big_n) {
      throw std::invalid_argument(
          fmt::format("probe {} has moment class {} < N = {}", phi.label, phi.moment_class, big_n));
    }
    ExtractedEntry e;
    e.probe = phi.label;
    e.moment_class = phi.moment_class;
    e.value = ultranorm(seminorm_channel(family(phi), nu, opts), r, tail);
    if (e.value.decided()) {
      const double n = static_cast<double>(big_n);
      e.in_f = e.value.band.hi < n ? Truth::yes : e.value.band.lo >= n ? Truth::no : Truth::unknown;
      e.in_k = truth_of(e.value.is_zero());
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

}  // namespace ultraseq
