#pragma once

// Lower probability of class subsets, its Möbius masses, and the generalized
// Hartley (non-specificity) measure of an interval credal set.

#include <cstddef>
#include <span>
#include <vector>

#include "credal/types.hpp"

namespace credal {

inline constexpr std::size_t kDefaultGhMaxClasses = 20;

/// nu(A) = max(sum_{k in A} lower_k, 1 - sum_{k not in A} upper_k).
double lower_probability(const IntervalSystem& intervals, Subset subset);
double lower_probability(const IntervalSystem& intervals, std::span<const std::size_t> subset);

/// nu over all 2^C subsets, indexed by bitmask.
std::vector<double> lower_probability_table(const IntervalSystem& intervals,
                                            std::size_t max_classes = kDefaultGhMaxClasses);

/// m(B) = sum_{A subset of B} (-1)^{|B \ A|} nu(A), computed with the in-place
/// subset-difference transform in O(C 2^C). Entries with |m| < 1e-12 are dropped.
MassAssignment mobius_masses(const IntervalSystem& intervals,
                             std::size_t max_classes = kDefaultGhMaxClasses);

/// GH = sum_B m(B) log2 |B|, in bits.
double generalized_hartley(const IntervalSystem& intervals,
                           std::size_t max_classes = kDefaultGhMaxClasses);
double generalized_hartley(const MassAssignment& masses) noexcept;

}  // namespace credal
