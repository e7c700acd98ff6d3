#pragma once

// Shannon entropy, the sample-averaging decomposition, and the upper/lower
// entropy of an interval credal set.
//
// The maximum of H over {p in simplex : lower <= p <= upper} is found exactly
// by clamped water-filling: p_k = clamp(c, lower_k, upper_k) with the level c
// chosen so the coordinates sum to 1. Every coordinate strictly inside its
// box then shares the same value, which is the KKT condition for the concave
// objective.
//
// The minimum is a concave minimization, attained at a vertex of the
// polytope. A vertex has at most one coordinate strictly between its bounds,
// so for small C all C * 2^(C-1) candidates are enumerated. Above
// `exact_threshold` a greedy mass-concentration search is used instead and the
// result is flagged as heuristic.

#include <cstddef>
#include <cstdint>
#include <span>

#include "credal/types.hpp"

namespace credal {

/// -sum p log2 p, with 0 log 0 = 0.
double shannon_entropy(std::span<const double> p) noexcept;
inline double shannon_entropy(const ProbabilityVector& p) noexcept {
  return shannon_entropy(p.values());
}

ProbabilityVector average_prediction(const PredictionSet& preds);

/// tu = H(mean), au = mean of H(sample), eu = tu - au.
UncertaintyTriple baseline_decomposition(const PredictionSet& preds);

struct EntropyResult {
  double value = 0.0;
  ProbabilityVector argument;
  bool heuristic = false;
};

struct WaterFillingOptions {
  double tolerance = 1e-12;  // on |sum(p) - 1|
  int max_iterations = 200;
};

EntropyResult upper_entropy(const IntervalSystem& intervals, const WaterFillingOptions& options = {});

enum class LowerEntropyMode { Auto, Exact, Heuristic };

struct LowerEntropyOptions {
  LowerEntropyMode mode = LowerEntropyMode::Auto;
  std::size_t exact_threshold = 16;
  std::size_t random_orders = 8;
  std::uint64_t seed = 0x5eedcafeULL;
};

EntropyResult lower_entropy(const IntervalSystem& intervals, const LowerEntropyOptions& options = {});

struct CredalOptions {
  WaterFillingOptions upper;
  LowerEntropyOptions lower;
};

/// tu = upper entropy, au = lower entropy, eu = tu - au.
UncertaintyTriple credal_decomposition(const IntervalSystem& intervals,
                                       const CredalOptions& options = {});

}  // namespace credal
