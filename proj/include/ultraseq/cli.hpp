#pragma once

// Command-line front end: norm, classify, assoc, convert-scale, check-map,
// extend, demo and batch files.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ultraseq/genfun.hpp"
#include "ultraseq/temperate.hpp"

namespace ultraseq::cli {

constexpr int kExitDecided = 0;
constexpr int kExitError = 1;
constexpr int kExitInconclusive = 2;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Function references: sin, bump(c, w), poly(c0, c1, ...), delta, delta(k)
/// (= delta_{kn}), mollified(standard | corrected), n^g (scales by n^g), a
/// number, and products of these with '*'. Throws std::invalid_argument.
SmoothSeq parse_function(std::string_view text);

/// Scalar maps: x, x^k, exp, log1p, inv_log, poly(c0, c1, ...), affine(a, b),
/// and compositions g(h) such as exp(x^2). Throws std::invalid_argument.
ScalarMap parse_map(std::string_view text);

struct DemoItem {
  std::string name;
  double value = 0.0;
  double expected = 0.0;
  bool pass = false;
  std::string detail;
};

/// The delta walkthrough: seminorm slopes, classifications, pairings and
/// weak associations of delta_n and delta_n^2.
std::vector<DemoItem> demo_delta();

}  // namespace ultraseq::cli
