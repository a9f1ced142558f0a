#include "ultraseq/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ultraseq/gennum.hpp"
#include "ultraseq/kernels.hpp"
#include "ultraseq/weights.hpp"

namespace ultraseq::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

/// Splits on `sep` outside parentheses.
std::vector<std::string> split_top(std::string_view s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (depth < 0) throw std::invalid_argument(fmt::format("unbalanced ')' in '{}'", s));
    if (s[i] == sep && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (depth != 0) throw std::invalid_argument(fmt::format("unbalanced '(' in '{}'", s));
  out.push_back(trim(s.substr(start)));
  return out;
}

double to_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(fmt::format("'{}' is not a number", s));
  }
  if (used != s.size()) throw std::invalid_argument(fmt::format("'{}' is not a number", s));
  return v;
}

/// name(args) -> {name, args}; a bare name has no args.
std::pair<std::string, std::optional<std::string>> call_form(const std::string& s) {
  const auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')') return {s, std::nullopt};
  return {trim(s.substr(0, open)), s.substr(open + 1, s.size() - open - 2)};
}

std::vector<double> numbers(const std::string& args) {
  std::vector<double> out;
  for (const auto& a : split_top(args, ',')) out.push_back(to_number(a));
  return out;
}

SmoothSeq function_factor(const std::string& text) {
  static const SmoothSeq delta = mollify(Mollifier::standard());
  if (text == "sin") return constant_seq(sine());
  if (text == "delta") return delta;
  if (text.rfind("n^", 0) == 0) {
    const double g = to_number(text.substr(2));
    SmoothSeq one = constant_seq(polynomial({1.0}));
    return scaled(one, [g](long n) { return std::pow(static_cast<double>(n), g); }, text);
  }
  const auto [name, args] = call_form(text);
  if (args) {
    if (name == "bump") {
      const auto v = numbers(*args);
      if (v.size() != 2) throw std::invalid_argument("bump(center, width) takes two numbers");
      return constant_seq(bump(v[0], v[1]));
    }
    if (name == "poly") return constant_seq(polynomial(numbers(*args)));
    if (name == "delta") {
      const double k = to_number(trim(*args));
      if (k < 1 || k != std::floor(k)) throw std::invalid_argument("delta(k) needs a positive integer k");
      return reindexed(delta, static_cast<long>(k));
    }
    if (name == "mollified") {
      const std::string p = trim(*args);
      if (p == "standard") return mollify(Mollifier::standard());
      if (p == "corrected") return mollify(Mollifier::corrected());
      throw std::invalid_argument("mollified(standard | corrected)");
    }
  }
  try {
    const double c = to_number(text);
    return scaled(constant_seq(polynomial({1.0})), [c](long) { return c; }, text);
  } catch (const std::invalid_argument&) {
  }
  throw std::invalid_argument(fmt::format("unknown function reference '{}'", text));
}

ScalarMap base_map(const std::string& name) {
  if (name == "x") return ScalarMap::identity();
  if (name == "exp") return ScalarMap::exp();
  if (name == "log1p") return ScalarMap::log1p();
  if (name == "inv_log") return ScalarMap::inv_log();
  if (name.rfind("x^", 0) == 0) return ScalarMap::power(to_number(name.substr(2)));
  throw std::invalid_argument(fmt::format("unknown map '{}' (x, x^k, exp, log1p, inv_log, poly(..), affine(a, b))", name));
}

std::optional<FunMap> fun_map(const std::string& name) {
  if (name == "square") return FunMap::square();
  if (name == "derivative" || name == "d/dx") return FunMap::derivative();
  if (name == "identity") return FunMap::identity();
  if (name == "exp-map") return FunMap::exponential();
  return std::nullopt;
}

// ---------------------------------------------------------------- context

struct Context {
  std::string space = "colombeau";
  std::string mode;  // empty: the family's own mode
  int m = 0;         // family member for norm (0: lowest)
  int m_hi = 0;
  bool sampled = false;
  long n_max = 1000000;
  unsigned long long seed = 1;
  std::map<std::string, std::string> names;  // batch [sequences]
};

WeightFamily family(const Context& c) {
  CatalogParams p;
  p.m_hi = c.m_hi;
  if (c.space.rfind("custom:", 0) == 0) {
    for (const auto& e : split_top(c.space.substr(7), ';')) p.custom.push_back(parse(e));
    return catalog("custom", p);
  }
  return catalog(c.space, p);
}

Mode mode(const Context& c, const WeightFamily& w) {
  if (c.mode.empty()) return mode_for(w);
  if (c.mode == "standard") return Mode::standard;
  if (c.mode == "unit-ball") return Mode::unit_ball;
  throw std::invalid_argument("mode must be standard or unit-ball");
}

std::string resolve(const Context& c, const std::string& name) {
  const auto it = c.names.find(name);
  return it == c.names.end() ? name : it->second;
}

bool is_function_ref(const std::string& text) { return text.rfind("fn:", 0) == 0; }

SeqRep sequence(const Context& c, const std::string& arg) {
  const std::string text = resolve(c, arg);
  const GrowthExpr e = parse(text);
  if (c.sampled) return SeqRep::sampled_from(e, c.n_max);
  return SeqRep::symbolic(e, text);
}

int code_for(bool decided) { return decided ? kExitDecided : kExitInconclusive; }

// ---------------------------------------------------------------- commands

int cmd_norm(const Context& c, const std::string& arg, std::ostream& out) {
  const WeightFamily w = family(c);
  const int m = c.m ? c.m : w.m_lo();
  TailOptions t;
  t.n_max = c.n_max;
  const UltranormValue v = ultranorm(sequence(c, arg), w.member(m), t);
  out << fmt::format("[[{}]] with r = {}: {}\n", resolve(c, arg), w.member(m).description(), v.describe());
  return code_for(v.decided());
}

int cmd_classify(const Context& c, const std::string& arg, std::ostream& out) {
  const WeightFamily w = family(c);
  const std::string text = resolve(c, arg);
  Classification cls;
  if (is_function_ref(text)) {
    cls = classify_fun(parse_function(text.substr(3)), 2, w, mode(c, w));
  } else {
    ClassifyOptions o;
    o.tail.n_max = c.n_max;
    cls = classify(sequence(c, arg), w, mode(c, w), o);
  }
  out << cls.format();
  return code_for(cls.verdict != Verdict::inconclusive);
}

AssocKind assoc_kind(const std::string& kind, double s) {
  if (kind == "weak") return AssocKind::weak();
  if (kind == "strong") return AssocKind::strong_s(s);
  if (kind == "dual" || kind == "s-dual") return AssocKind::s_dual(s);
  if (kind == "weak-s") return AssocKind::weak_s(s);
  throw std::invalid_argument(fmt::format("unknown association kind '{}' (weak, strong, dual, weak-s)", kind));
}

int cmd_assoc(const Context& c, const std::string& a, const std::string& b, const std::string& kind, double s,
              std::ostream& out) {
  const WeightFamily w = family(c);
  const std::string ta = resolve(c, a);
  const std::string tb = resolve(c, b);
  if (is_function_ref(ta) || is_function_ref(tb)) {
    if (!is_function_ref(ta) || !is_function_ref(tb)) {
      throw std::invalid_argument("assoc needs two numbers or two function references");
    }
    const auto space = std::make_shared<const Space>(w, mode(c, w));
    const FunAssocVerdict v = weak_assoc_fun(parse_function(ta.substr(3)), parse_function(tb.substr(3)),
                                             assoc_kind(kind, s), default_test_set(), space);
    out << v.format() << "\n";
    return code_for(v.holds != Truth::unknown);
  }
  const auto space = std::make_shared<const Space>(w, mode(c, w));
  const GenNumber x = GenNumber::symbolic(ta, space);
  const GenNumber y = GenNumber::symbolic(tb, space);
  const AssocVerdict v = associate(x, y, assoc_kind(kind, s));
  out << v.format() << "\n";
  return code_for(v.holds != Truth::unknown);
}

int cmd_convert_scale(const Context& c, const std::string& base, int probe_max, std::ostream& out) {
  const AsymptoticScale a = AsymptoticScale::geometric(parse(resolve(c, base)));
  std::vector<int> probe;
  for (int m = 1; m <= probe_max; ++m) probe.push_back(m);
  const ScaleAxiomReport axioms = verify_scale_axioms(a, probe);
  out << fmt::format("scale a_m = {}\n", a.name());
  out << axioms.format();
  const WeightFamily w = scale_to_weights(a, c.m_hi ? c.m_hi : 16);
  out << fmt::format("weights {} ({}):\n", w.name(), to_string(w.direction()));
  for (int m : w.indices(probe_max)) out << fmt::format("  r^{} = {}\n", m, w.member(m).description());
  return code_for(axioms.all_pass());
}

int cmd_check_map(const Context& c, const std::string& name, const std::string& role, bool json, bool numeric,
                  std::ostream& out) {
  const WeightFamily w = family(c);
  if (const auto phi = fun_map(name)) {
    TemperateCheckOptions o;
    o.seed = c.seed;
    o.scalar.numeric_only = numeric;
    const TemperateReport r = check_temperate(*phi, w, o);
    out << r.format();
    return code_for(r.status != TemperateCertificate::Status::inconclusive);
  }
  const ScalarMap g = parse_map(name);
  TemperateOptions o;
  o.numeric_only = numeric;
  bool decided = true;
  auto emit = [&](const TemperateCertificate& cert) {
    out << (json ? cert.to_json() + "\n" : cert.format());
    if (cert.witness) out << fmt::format("witness replays: {}\n", replay(cert, g, w) ? "yes" : "no");
    decided = decided && cert.status != TemperateCertificate::Status::inconclusive;
  };
  if (role != "compatible") emit(check_moderate(g, w, o));
  if (role != "moderate") emit(check_compatible(g, w, o));
  return code_for(decided);
}

int cmd_extend(const Context& c, const std::string& map, const std::string& fn, std::ostream& out) {
  const WeightFamily w = family(c);
  const auto phi = fun_map(map);
  if (!phi) throw std::invalid_argument(fmt::format("unknown function map '{}' (square, derivative, identity, exp-map)", map));
  std::string text = resolve(c, fn);
  if (is_function_ref(text)) text = text.substr(3);
  TemperateCheckOptions o;
  o.seed = c.seed;
  const TemperateReport cert = check_temperate(*phi, w, o);
  out << cert.format();
  if (cert.status != TemperateCertificate::Status::certified) {
    out << fmt::format("{} is not certified; no extension\n", phi->name);
    return code_for(cert.status == TemperateCertificate::Status::refuted);
  }
  const ExtendResult r = extend(*phi, cert, parse_function(text), w, 2);
  out << fmt::format("{}([{}]) = [{}]\n", phi->name, text, r.image.label) << r.classification.format();
  return kExitDecided;
}

int cmd_demo(const std::string& which, std::ostream& out) {
  if (which != "delta") throw std::invalid_argument("available demos: delta");
  bool all = true;
  for (const auto& item : demo_delta()) {
    out << fmt::format("{}: {:.9g} (expected {:.9g}) {}{}\n", item.name, item.value, item.expected,
                       item.pass ? "pass" : "FAIL", item.detail.empty() ? "" : " - " + item.detail);
    all = all && item.pass;
  }
  out << fmt::format("demo delta: {}\n", all ? "all checks pass" : "some checks FAIL");
  return kExitDecided;
}

// ---------------------------------------------------------------- batch

int run_query(Context& c, const std::vector<std::string>& tok, std::ostream& out) {
  const std::string& q = tok.at(0);
  auto need = [&](std::size_t n) {
    if (tok.size() < n + 1) throw std::invalid_argument(fmt::format("'{}' needs {} argument(s)", q, n));
  };
  if (q == "norm") {
    need(1);
    return cmd_norm(c, tok[1], out);
  }
  if (q == "classify") {
    need(1);
    return cmd_classify(c, tok[1], out);
  }
  if (q == "assoc") {
    need(3);
    const double s = tok.size() > 4 ? to_number(tok[4]) : 0.0;
    return cmd_assoc(c, tok[1], tok[2], tok[3], s, out);
  }
  if (q == "convert-scale") {
    need(1);
    return cmd_convert_scale(c, tok[1], 8, out);
  }
  if (q == "check-map" || q == "check") {
    need(1);
    return cmd_check_map(c, tok[1], tok.size() > 2 ? tok[2] : "both", false, false, out);
  }
  if (q == "extend") {
    need(2);
    return cmd_extend(c, tok[1], tok[2], out);
  }
  if (q == "demo") {
    need(1);
    return cmd_demo(tok[1], out);
  }
  throw std::invalid_argument(fmt::format("unknown query '{}'", q));
}

int cmd_batch(Context c, const std::string& path, std::ostream& out, std::ostream& err) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(fmt::format("cannot open '{}'", path));
  std::string section;
  std::string line;
  int lineno = 0;
  int worst = kExitDecided;
  std::vector<std::pair<int, std::vector<std::string>>> queries;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    const std::string text = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (text.empty()) continue;
    auto fail = [&](const std::string& msg) {
      throw std::invalid_argument(fmt::format("{}:{}: {}", path, lineno, msg));
    };
    if (text.front() == '[') {
      if (text != "[space]" && text != "[sequences]" && text != "[queries]") fail("unknown section " + text);
      section = text;
      continue;
    }
    if (section == "[queries]") {
      std::istringstream ss(text);
      std::vector<std::string> tok;
      for (std::string t; ss >> t;) tok.push_back(t);
      queries.emplace_back(lineno, tok);
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (section == "[space]") {
      try {
        if (key == "family") c.space = value;
        else if (key == "mode") c.mode = value;
        else if (key == "m") c.m = static_cast<int>(to_number(value));
        else if (key == "m_hi") c.m_hi = static_cast<int>(to_number(value));
        else if (key == "n_max") c.n_max = static_cast<long>(to_number(value));
        else if (key == "seed") c.seed = static_cast<unsigned long long>(to_number(value));
        else if (key == "sampled") c.sampled = value == "true" || value == "1";
        else fail("unknown space key '" + key + "'");
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
    } else if (section == "[sequences]") {
      try {
        if (is_function_ref(value)) parse_function(value.substr(3));
        else parse(value);
      } catch (const std::exception& e) {
        fail(fmt::format("sequence '{}': {}", key, e.what()));
      }
      c.names[key] = value;
    } else {
      fail("entry outside a section");
    }
  }
  for (const auto& [at, tok] : queries) {
    out << fmt::format("> {}\n", fmt::join(tok, " "));
    try {
      worst = std::max(worst, run_query(c, tok, out));
    } catch (const std::exception& e) {
      err << fmt::format("{}:{}: {}\n", path, at, e.what());
      worst = kExitError;
    }
  }
  return worst == kExitError ? kExitError : worst;
}

}  // namespace

// ---------------------------------------------------------------- parsing

SmoothSeq parse_function(std::string_view text) {
  const auto factors = split_top(trim(text), '*');
  if (factors.size() == 1 && factors[0].empty()) throw std::invalid_argument("empty function reference");
  SmoothSeq f = function_factor(factors[0]);
  for (std::size_t i = 1; i < factors.size(); ++i) f = product(f, function_factor(factors[i]));
  if (factors.size() > 1) f.label = trim(text);
  return f;
}

ScalarMap parse_map(std::string_view text) {
  const std::string s = trim(text);
  const auto [name, args] = call_form(s);
  if (!args) return base_map(s);
  if (name == "poly") return ScalarMap::poly(numbers(*args));
  if (name == "affine") {
    const auto v = numbers(*args);
    if (v.size() != 2) throw std::invalid_argument("affine(a, b) takes two numbers");
    return ScalarMap::affine(v[0], v[1]);
  }
  return ScalarMap::compose(base_map(name), parse_map(*args));
}

// ---------------------------------------------------------------- demo

std::vector<DemoItem> demo_delta() {
  std::vector<DemoItem> items;
  const Mollifier phi = Mollifier::standard();
  const SmoothSeq delta = mollify(phi);
  const SmoothSeq delta2 = product(delta, delta);
  const WeightFamily w = catalog("colombeau");
  auto slope = [](const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sx += x[i];
      sy += y[i];
      sxx += x[i] * x[i];
      sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };

  for (int nu = 0; nu <= 3; ++nu) {
    std::vector<double> x;
    std::vector<double> y;
    for (long n = 16; n <= 1024; n *= 2) {
      x.push_back(std::log(static_cast<double>(n)));
      y.push_back(std::log(seminorm(delta, n, {nu})));
    }
    const double s = slope(x, y);
    items.push_back({fmt::format("slope of log p_{}(delta_n) vs log n, n in [16, 1024]", nu), s, nu + 1.0,
                     std::abs(s - (nu + 1.0)) <= 0.05 * (nu + 1.0), "tolerance 5%"});
  }

  const Classification cd = classify_fun(delta, 2, w, Mode::standard);
  items.push_back({"delta_n: log [[p_0]] (moderate, not negligible)", cd.details.at(0).value.log_value, 1.0,
                   cd.verdict == Verdict::moderate, "verdict " + to_string(cd.verdict)});
  const Classification cd2 = classify_fun(delta2, 2, w, Mode::standard);
  items.push_back({"delta_n^2: log [[p_0]] (moderate, not negligible)", cd2.details.at(0).value.log_value, 2.0,
                   cd2.verdict == Verdict::moderate, "verdict " + to_string(cd2.verdict)});

  const TestFunction psi = test_bump(0.1, 0.7);
  const double psi0 = psi.psi(0.0);
  const double d256 = std::abs(pairing(delta, 256, psi) - psi0);
  items.push_back({"|<delta_256, psi> - psi(0)|", d256, 0.0, d256 <= 1e-3, "tolerance 1e-3, psi = " + psi.label});

  std::vector<double> x;
  std::vector<double> y;
  for (long n = 16; n <= 1024; n *= 2) {
    x.push_back(std::log(static_cast<double>(n)));
    y.push_back(std::log(pairing(delta2, n, psi)));
  }
  const double s2 = slope(x, y);
  items.push_back({"slope of log <delta_n^2, psi> vs log n", s2, 1.0, std::abs(s2 - 1.0) <= 0.1, "tolerance 0.1"});

  const double phi2 = kernels::integrate_panels([&](double t) { return std::pow(phi.profile(t), 2); }, -1.0, 1.0, 8,
                                                1e-13)
                          .value;
  const SmoothSeq c_delta = scaled(delta, [phi2](long) { return phi2; }, fmt::format("{:.6g}", phi2));
  const std::vector<SmoothSeq> candidates{zero_seq(), constant_seq(sine()), delta, c_delta};
  int associated = 0;
  std::vector<std::string> verdicts;
  for (const auto& cand : candidates) {
    const FunAssocVerdict v = weak_assoc_fun(delta2, cand, AssocKind::weak());
    if (v.holds != Truth::no) ++associated;
    verdicts.push_back(fmt::format("{}: {}", cand.label, to_string(v.holds)));
  }
  items.push_back({"candidates weakly associated to delta_n^2", static_cast<double>(associated), 0.0, associated == 0,
                   fmt::format("{}", fmt::join(verdicts, ", "))});

  const SmoothSeq lhs = scaled(delta2, [](long n) { return 1.0 / n; }, "1/n");
  double worst = 0.0;
  for (const auto& t : default_test_set()) {
    worst = std::max(worst, std::abs(pairing(lhs, 1024, t) - pairing(c_delta, 1024, t)));
  }
  const FunAssocVerdict v = weak_assoc_fun(lhs, c_delta, AssocKind::weak());
  items.push_back({"max_psi |<n^-1 delta_n^2 - (int phi^2) delta_n, psi>| at n = 1024", worst, 0.0,
                   worst <= 1e-3 && v.holds == Truth::yes,
                   fmt::format("int phi^2 = {:.9g}; weak association {}", phi2, to_string(v.holds))});
  return items;
}

// ---------------------------------------------------------------- entry

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ultraseq: ultranorms, generalized numbers and generalized functions"};
  app.require_subcommand(1);
  Context c;
  auto common = [&c](CLI::App* sub) {
    sub->add_option("--space", c.space, "weight family: colombeau, colombeau-scale, ultra, egorov, "
                                        "infra-exponential, exponential, custom:EXPR;EXPR...");
    sub->add_option("--mode", c.mode, "standard or unit-ball (default: the family's own)");
    sub->add_option("--m", c.m, "family member for norm");
    sub->add_option("--m-hi", c.m_hi, "largest family index");
    sub->add_flag("--sampled", c.sampled, "evaluate expressions on the sampled tier");
    sub->add_option("--n-max", c.n_max, "sampled tier horizon");
    sub->add_option("--seed", c.seed, "seed for randomized checks");
  };

  std::string a;
  std::string b;
  std::string kind = "weak";
  double s = 0.0;
  std::string role = "both";
  bool json = false;
  bool numeric = false;
  int probe_max = 8;

  auto* norm = app.add_subcommand("norm", "ultranorm [[SEQ]] for one weight");
  norm->add_option("seq", a, "expression")->required();
  common(norm);
  auto* cls = app.add_subcommand("classify", "membership in F and K");
  cls->add_option("seq", a, "expression, or fn:REF for a function sequence")->required();
  common(cls);
  auto* assoc = app.add_subcommand("assoc", "association of two generalized numbers");
  assoc->add_option("a", a)->required();
  assoc->add_option("b", b)->required();
  assoc->add_option("--kind", kind, "weak, strong, dual, weak-s");
  assoc->add_option("--s", s, "threshold exponent s");
  common(assoc);
  auto* conv = app.add_subcommand("convert-scale", "scale a_m = BASE^m: axioms and weight family");
  conv->add_option("base", a)->required();
  conv->add_option("--probe", probe_max, "indices m checked");
  common(conv);
  auto* check = app.add_subcommand("check-map", "certify a scalar map, or a function map (square, derivative, "
                                                 "identity, exp-map)");
  check->add_option("map", a)->required();
  check->add_option("--role", role, "moderate, compatible or both");
  check->add_flag("--json", json, "certificates as JSON");
  check->add_flag("--numeric", numeric, "skip the exact tier");
  common(check);
  auto* ext = app.add_subcommand("extend", "apply a certified function map to a function sequence");
  ext->add_option("map", a)->required();
  ext->add_option("function", b)->required();
  common(ext);
  auto* demo = app.add_subcommand("demo", "walkthroughs (delta)");
  demo->add_option("name", a)->required();
  auto* batch = app.add_subcommand("batch", "run a batch file with [space], [sequences], [queries]");
  batch->add_option("file", a)->required();
  common(batch);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitDecided : kExitError;
  }

  try {
    if (norm->parsed()) return cmd_norm(c, a, out);
    if (cls->parsed()) return cmd_classify(c, a, out);
    if (assoc->parsed()) return cmd_assoc(c, a, b, kind, s, out);
    if (conv->parsed()) return cmd_convert_scale(c, a, probe_max, out);
    if (check->parsed()) return cmd_check_map(c, a, role, json, numeric, out);
    if (ext->parsed()) return cmd_extend(c, a, b, out);
    if (demo->parsed()) return cmd_demo(a, out);
    if (batch->parsed()) return cmd_batch(c, a, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace ultraseq::cli
