#pragma once

// Seeded random growth expressions for property suites.

#include <cstdint>
#include <random>
#include <vector>

#include "ultraseq/asymptotics.hpp"

namespace ultraseq {

struct CorpusOptions {
  int max_terms = 3;
  /// |exponent of n| stays below this, so every element is o(n^64) or
  /// dominates it by the exp part alone.
  int pow_limit = 10;
  double exp_probability = 0.3;
  double alt_probability = 0.1;
  double zero_probability = 0.03;
};

class Corpus {
 public:
  explicit Corpus(std::uint64_t seed, CorpusOptions opts = {}) : rng_(seed), opts_(opts) {}

  GrowthTerm term();
  /// Sum of 1..max_terms terms; occasionally Zero or parity-modulated.
  GrowthExpr next();
  GrowthExpr next_unmodulated();
  /// Nonnegative expression that is negligible for weights down to 1/log n:
  /// exp(-c log(n)^e) (e > 1) or exp(-c n^d) times a polynomial factor, or Zero.
  GrowthExpr negligible_candidate();
  double uniform(double lo, double hi);
  int integer(int lo, int hi);
  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
  CorpusOptions opts_;
};

std::vector<GrowthExpr> random_corpus(std::size_t count, std::uint64_t seed, const CorpusOptions& opts = {});

}  // namespace ultraseq
