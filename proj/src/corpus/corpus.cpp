#include "ultraseq/corpus.hpp"

namespace ultraseq {

double Corpus::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

int Corpus::integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

GrowthTerm Corpus::term() {
  GrowthTerm t;
  t.coeff = uniform(0.1, 10.0);
  t.pow_n = integer(-2 * opts_.pow_limit, 2 * opts_.pow_limit) * 0.5;
  t.pow_log = integer(-2, 2);
  t.pow_loglog = integer(-1, 1);
  if (uniform(0, 1) < opts_.exp_probability) {
    static constexpr double kCoeffs[] = {-2, -1, -0.5, 0.5, 1, 2};
    const double c = kCoeffs[integer(0, 5)];
    switch (integer(0, 4)) {
      case 0: t.exp_part.push_back({c, 0.25, 0.0}); break;
      case 1: t.exp_part.push_back({c, 0.5, 0.0}); break;
      case 2: t.exp_part.push_back({c, 1.0, 0.0}); break;
      case 3: t.exp_part.push_back({c, 1.5, 0.0}); break;
      default: t.exp_part.push_back({c, 0.0, 2.0}); break;
    }
  }
  return t;
}

GrowthExpr Corpus::next_unmodulated() {
  if (uniform(0, 1) < opts_.zero_probability) return GrowthExpr::zero();
  GrowthExpr e = GrowthExpr::term(term());
  const int extra = integer(0, opts_.max_terms - 1);
  for (int i = 0; i < extra; ++i) e = add(e, GrowthExpr::term(term()));
  return e;
}

GrowthExpr Corpus::next() {
  if (uniform(0, 1) < opts_.alt_probability) {
    const GrowthExpr a = next_unmodulated();
    const GrowthExpr b = next_unmodulated();
    if (!(a.is_zero() && b.is_zero())) return GrowthExpr::alt(a, b);
  }
  return next_unmodulated();
}

GrowthExpr Corpus::negligible_candidate() {
  if (uniform(0, 1) < 0.1) return GrowthExpr::zero();
  GrowthTerm t;
  t.coeff = uniform(0.1, 10.0);
  t.pow_n = integer(-2 * opts_.pow_limit, 2 * opts_.pow_limit) * 0.5;
  t.pow_log = integer(-2, 2);
  const double c = -uniform(0.25, 3.0);
  if (integer(0, 1)) {
    t.exp_part.push_back({c, 0.0, static_cast<double>(integer(2, 3))});
  } else {
    static constexpr double kPowers[] = {0.25, 0.5, 1.0, 1.5, 2.0};
    t.exp_part.push_back({c, kPowers[integer(0, 4)], 0.0});
  }
  return GrowthExpr::term(t);
}

std::vector<GrowthExpr> random_corpus(std::size_t count, std::uint64_t seed, const CorpusOptions& opts) {
  Corpus c(seed, opts);
  std::vector<GrowthExpr> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(c.next());
  return out;
}

}  // namespace ultraseq
