#include "ultraseq/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

namespace ultraseq {

// ---------------------------------------------------------------- WeightSeq

WeightSeq WeightSeq::symbolic(GrowthExpr expr, std::string description) {
  if (description.empty()) description = expr.format();
  return WeightSeq(Symbolic{std::move(expr)}, std::move(description));
}

WeightSeq WeightSeq::egorov_step(int m) {
  return WeightSeq(EgorovStep{m}, fmt::format("step(n <= {})", m));
}

WeightSeq WeightSeq::sampled(std::function<double(long)> eval, std::string description,
                             long first_index) {
  return WeightSeq(Sampled{std::move(eval), first_index}, std::move(description));
}

double WeightSeq::value(long n) const {
  return std::visit(
      [n](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Symbolic>) {
          return k.expr.value(n);
        } else if constexpr (std::is_same_v<T, EgorovStep>) {
          return n <= k.m ? 1.0 : 0.0;
        } else {
          return k.eval(n);
        }
      },
      kind_);
}

long WeightSeq::first_index() const {
  if (const auto* s = std::get_if<Symbolic>(&kind_)) return std::max(2L, s->expr.threshold());
  if (const auto* s = std::get_if<Sampled>(&kind_)) return s->first_index;
  return 1;
}

std::optional<int> WeightSeq::egorov_m() const {
  if (const auto* e = std::get_if<EgorovStep>(&kind_)) return e->m;
  return std::nullopt;
}

bool WeightSeq::validate(std::string* why) const {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (const auto* s = std::get_if<Symbolic>(&kind_)) {
    if (s->expr.is_zero() || s->expr.modulated()) return fail("weight must be a nonzero unmodulated expression");
    if (compare(s->expr, GrowthExpr::constant(1.0)).order != Order::less) {
      return fail("weight " + s->expr.format() + " does not tend to 0");
    }
  }
  if (egorov_m()) return true;
  double prev = std::numeric_limits<double>::infinity();
  for (long n : default_probes()) {
    if (n < first_index()) continue;
    const double v = value(n);
    if (v == 0.0 && is_sampled()) break;  // underflow past the double range
    if (!(v > 0.0)) return fail(fmt::format("weight not positive at n = {}", n));
    if (v > prev * (1 + 1e-12)) return fail(fmt::format("weight increases at n = {}", n));
    prev = v;
  }
  return true;
}

const std::vector<long>& default_probes() {
  static const std::vector<long> probes{2, 10, 100, 10000, 1000000};
  return probes;
}

// ---------------------------------------------------------------- families

std::string to_string(Direction d) {
  switch (d) {
    case Direction::single: return "single";
    case Direction::decreasing: return "decreasing (r^{m+1} <= r^m)";
    case Direction::increasing: return "increasing (r^{m+1} >= r^m)";
  }
  return "?";
}

WeightFamily::WeightFamily(std::string name, Direction direction, int m_lo, int m_hi,
                           std::function<WeightSeq(int)> member, bool unit_ball)
    : name_(std::move(name)),
      direction_(direction),
      m_lo_(m_lo),
      m_hi_(m_hi),
      member_(std::move(member)),
      unit_ball_(unit_ball) {}

WeightFamily WeightFamily::single(std::string name, WeightSeq r, bool unit_ball) {
  return WeightFamily(std::move(name), Direction::single, 1, 1, [r](int) { return r; }, unit_ball);
}

std::vector<int> WeightFamily::indices(int bound) const {
  if (direction_ == Direction::single) return {m_lo_};
  std::vector<int> out;
  for (int m = m_lo_; m <= std::min(m_hi_, bound); ++m) out.push_back(m);
  return out;
}

DirectionCheck verify_direction(const WeightFamily& family, const std::vector<long>& probes,
                                int bound) {
  if (family.direction() == Direction::single) return {};
  const auto ms = family.indices(bound);
  for (std::size_t i = 0; i + 1 < ms.size(); ++i) {
    const WeightSeq lo = family.member(ms[i]);
    const WeightSeq hi = family.member(ms[i + 1]);
    for (long n : probes) {
      if (n < std::max(lo.first_index(), hi.first_index())) continue;
      const double a = lo.value(n);
      const double b = hi.value(n);
      const bool ok = family.direction() == Direction::decreasing ? b <= a * (1 + 1e-12)
                                                                  : b >= a * (1 - 1e-12);
      if (!ok) {
        return {false, fmt::format("m = {}, n = {}: r^m = {}, r^(m+1) = {}", ms[i], n, a, b)};
      }
    }
  }
  return {};
}

namespace {

Direction infer_direction(const std::vector<WeightSeq>& members) {
  bool le = true;
  bool ge = true;
  for (std::size_t i = 0; i + 1 < members.size(); ++i) {
    for (long n : default_probes()) {
      if (n < std::max(members[i].first_index(), members[i + 1].first_index())) continue;
      const double a = members[i].value(n);
      const double b = members[i + 1].value(n);
      if (b > a * (1 + 1e-12)) le = false;
      if (b < a * (1 - 1e-12)) ge = false;
    }
  }
  if (le && !ge) return Direction::decreasing;
  if (ge && !le) return Direction::increasing;
  if (le && ge) return Direction::decreasing;  // all members coincide on probes
  throw std::invalid_argument("weight family is not monotone in m");
}

GrowthExpr ultra_member(int m) { return GrowthExpr::n_power(-static_cast<double>(m) / (m - 1)); }

double iterated_exp(double x, int times) {
  for (int i = 0; i < times; ++i) x = std::exp(x);
  return x;
}

}  // namespace

WeightFamily catalog(const std::string& name, const CatalogParams& params) {
  if (name == "colombeau") {
    return WeightFamily::single("colombeau", WeightSeq::symbolic(parse("log(n)^-1"), "1/log(n)"));
  }
  if (name == "colombeau-scale") {
    const int lo = params.m_lo ? params.m_lo : 1;
    const int hi = params.m_hi ? params.m_hi : 16;
    if (lo < 1 || hi < lo) throw std::invalid_argument("colombeau-scale family needs 1 <= m_lo <= m_hi");
    return WeightFamily(fmt::format("colombeau-scale[{}..{}]", lo, hi), Direction::decreasing, lo, hi, [](int m) {
      return WeightSeq::symbolic(scale(parse("log(n)^-1"), 1.0 / m), fmt::format("1/({} log(n))", m));
    });
  }
  if (name == "infra-exponential") {
    return WeightFamily::single("infra-exponential", WeightSeq::symbolic(parse("n^-1"), "1/n"), true);
  }
  if (name == "ultra") {
    const int lo = params.m_lo ? params.m_lo : 2;
    const int hi = params.m_hi ? params.m_hi : 16;
    if (lo < 2 || hi < lo) throw std::invalid_argument("ultra family needs 2 <= m_lo <= m_hi");
    return WeightFamily(fmt::format("ultra[{}..{}]", lo, hi), Direction::increasing, lo, hi, [](int m) {
      return WeightSeq::symbolic(ultra_member(m), fmt::format("n^(-{}/{})", m, m - 1));
    });
  }
  if (name == "egorov") {
    const int lo = params.m_lo ? params.m_lo : 1;
    const int hi = params.m_hi ? params.m_hi : 16;
    if (lo < 1 || hi < lo) throw std::invalid_argument("egorov family needs 1 <= m_lo <= m_hi");
    return WeightFamily(fmt::format("egorov[{}..{}]", lo, hi), Direction::increasing, lo, hi,
                        [](int m) { return WeightSeq::egorov_step(m); });
  }
  if (name == "exponential") {
    const int hi = params.m_hi ? params.m_hi : 3;
    return WeightFamily(fmt::format("exponential[1..{}]", hi), Direction::decreasing, 1, hi, [](int m) {
      return WeightSeq::sampled([m](long n) { return 1.0 / iterated_exp(static_cast<double>(n), m - 1); },
                                fmt::format("1/exp^{}(n)", m - 1));
    });
  }
  if (name == "custom") {
    if (params.custom.empty()) throw std::invalid_argument("custom family needs at least one expression");
    std::vector<WeightSeq> members;
    for (const auto& e : params.custom) {
      WeightSeq w = WeightSeq::symbolic(e);
      std::string why;
      if (!w.validate(&why)) throw std::invalid_argument("custom weight rejected: " + why);
      members.push_back(std::move(w));
    }
    std::vector<std::string> names;
    for (const auto& e : params.custom) names.push_back(e.format());
    const std::string fname = fmt::format("custom[{}]", fmt::join(names, "; "));
    if (members.size() == 1) return WeightFamily::single(fname, members.front());
    const Direction d = infer_direction(members);
    const int hi = static_cast<int>(members.size());
    return WeightFamily(fname, d, 1, hi, [members](int m) { return members.at(m - 1); });
  }
  throw std::invalid_argument("unknown weight family '" + name + "'");
}

// ---------------------------------------------------------------- scales

AsymptoticScale AsymptoticScale::geometric(const GrowthExpr& base) {
  return AsymptoticScale("(" + base.format() + ")^m", [base](int m) { return pow(base, m); });
}

bool ScaleAxiomReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const Entry& e) {
    return e.decreasing && e.reciprocal && e.square_witness.has_value();
  });
}

std::string ScaleAxiomReport::format() const {
  std::string out;
  for (const auto& e : entries) {
    out += fmt::format("m={} a_(m+1)=o(a_m): {} a_(-m)=1/a_m: {} a_M=o(a_m^2): {}\n", e.m,
                       e.decreasing ? "pass" : "FAIL", e.reciprocal ? "pass" : "FAIL",
                       e.square_witness ? fmt::format("pass (M={})", *e.square_witness)
                                        : fmt::format("inconclusive (no M with |M| <= {})", search_limit));
  }
  out += fmt::format("axioms: {}\n", all_pass() ? "pass" : "FAIL");
  return out;
}

ScaleAxiomReport verify_scale_axioms(const AsymptoticScale& a, const std::vector<int>& probe,
                                     int search_limit) {
  ScaleAxiomReport report;
  report.search_limit = search_limit;
  for (int m : probe) {
    ScaleAxiomReport::Entry e;
    e.m = m;
    try {
      e.decreasing = compare(a.member(m + 1), a.member(m)).order == Order::less;
    } catch (const std::exception&) {
      e.decreasing = false;
    }
    try {
      e.reciprocal = a.member(-m) == pow(a.member(m), -1.0);
    } catch (const std::exception&) {
      e.reciprocal = false;
    }
    try {
      const GrowthExpr sq = mul(a.member(m), a.member(m));
      for (int big = -search_limit; big <= search_limit; ++big) {
        if (compare(a.member(big), sq).order == Order::less) {
          e.square_witness = big;
          break;
        }
      }
    } catch (const std::exception&) {
    }
    report.entries.push_back(e);
  }
  return report;
}

WeightFamily scale_to_weights(const AsymptoticScale& a, int m_hi) {
  auto member = [a](int m) {
    const GrowthExpr am = a.member(m);
    if (am.is_zero() || am.modulated()) {
      throw std::invalid_argument("scale member a_" + std::to_string(m) + " must be nonzero and unmodulated");
    }
    const LogCombo l = *log_expr(am).even;
    if (l.empty() || l.dominant()->first.kind == LogMonomial::Kind::constant) {
      throw std::invalid_argument("|log a_" + std::to_string(m) + "| does not tend to infinity");
    }
    const LogCombo abs_l = l.scaled(l.eventual_sign());
    if (auto exact = to_growth(abs_l); exact && exact->terms().size() == 1) {
      GrowthExpr r = pow(*exact, -1.0);
      return WeightSeq::symbolic(r, r.format());
    }
    LogCombo lead;
    lead.add(abs_l.dominant()->first, abs_l.dominant()->second);
    auto g = to_growth(lead);
    if (!g) throw std::invalid_argument("|log a_" + std::to_string(m) + "| has no term representation");
    GrowthExpr r = pow(*g, -1.0);
    return WeightSeq::symbolic(r, r.format() + " (asymptotically equal to 1/|log a_m|)");
  };
  std::vector<WeightSeq> first;
  for (int m = 1; m <= std::min(m_hi, 4); ++m) first.push_back(member(m));
  const Direction d = first.size() > 1 ? infer_direction(first) : Direction::single;
  if (d == Direction::single) return WeightFamily::single("weights of " + a.name(), first.front());
  return WeightFamily("weights of " + a.name(), d, 1, m_hi, member);
}

}  // namespace ultraseq
