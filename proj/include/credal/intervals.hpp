#pragma once

#include "credal/types.hpp"

namespace credal {

/// Per-class min/max over the samples. The result is always proper: any
/// single sample sums to 1 and is sandwiched between the two bound vectors.
IntervalSystem extract_intervals(const PredictionSet& preds);

/// sum(lower) <= 1 <= sum(upper), with `tolerance` slack on both sides.
bool is_proper(const IntervalSystem& intervals, double tolerance = kInternalTolerance);

/// Credal-set membership test with per-bound slack.
bool contains(const IntervalSystem& intervals, const ProbabilityVector& p,
              double tolerance = kInternalTolerance);

/// Reachability tightening: each bound is pulled in to the value some member
/// of the credal set actually attains. The credal set itself is unchanged.
IntervalSystem tighten(const IntervalSystem& intervals);

struct IntersectionResult {
  ProbabilityVector probability;
  double alpha = 0.0;
  /// alpha fell outside [0, 1] through rounding and was clamped.
  bool alpha_clamped = false;
};

/// The simplex point lower + alpha * (upper - lower) with one shared alpha.
/// Zero total width returns `lower`, which is then the only member.
IntersectionResult intersection_probability_detailed(const IntervalSystem& intervals);

inline ProbabilityVector intersection_probability(const IntervalSystem& intervals) {
  return intersection_probability_detailed(intervals).probability;
}

namespace detail {
void require_proper(const IntervalSystem& intervals);
}

}  // namespace credal
