#pragma once

// Probability interval approximation: shrink a C-class interval system to J
// pseudo-classes so the entropy optimizations and the Hartley measure stay
// cheap for large C.
//
// Classes are ranked by the intersection probability (descending, ties by
// ascending index). The top J-1 keep their bounds; everything else is merged
// into one pseudo-class. The merged bounds are the coherent ones
//
//   lower = max(sum of merged lowers, 1 - sum of kept uppers)
//   upper = min(sum of merged uppers, 1 - sum of kept lowers)
//
// which every distribution of the original set satisfies after coarsening.
// MergeRule::AsPrinted instead takes
//
//   lower = max(1 - sum of merged uppers, sum of kept lowers)
//   upper = min(1 - sum of merged lowers, sum of kept uppers)
//
// which bounds the kept mass rather than the merged one. It is kept for
// comparison only; its bounds are not guaranteed to be valid.

#include <cstddef>
#include <vector>

#include "credal/types.hpp"

namespace credal {

enum class MergeRule { Coherent, AsPrinted };

struct ReducedIntervals {
  IntervalSystem intervals;          // J classes: kept classes in rank order, then the merged one
  std::vector<std::size_t> kept;     // original index of reduced class j, j < J-1
  std::vector<std::size_t> merged;   // original indices folded into class J-1, in rank order
};

ReducedIntervals approximate_intervals(const IntervalSystem& intervals,
                                       const ProbabilityVector& pstar, std::size_t j,
                                       MergeRule rule = MergeRule::Coherent);

/// Sums a full-dimension vector into the reduced class layout.
std::vector<double> coarsen(const ReducedIntervals& reduced, std::span<const double> p);

/// Suggested J for a class count: 20 around C=100, 50 around C=1000, C below 20.
std::size_t default_pia_j(std::size_t classes) noexcept;

}  // namespace credal
