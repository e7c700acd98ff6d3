#include "credal/pia.hpp"

#include <algorithm>
#include <numeric>

#include "credal/intervals.hpp"

namespace credal {

ReducedIntervals approximate_intervals(const IntervalSystem& intervals,
                                       const ProbabilityVector& pstar, std::size_t j,
                                       MergeRule rule) {
  const std::size_t c = intervals.size();
  detail::require(j >= 2 && j <= c, ErrorCode::InvalidJ,
                  "J=" + std::to_string(j) + " must lie in [2, " + std::to_string(c) + "]");
  detail::require(pstar.size() == c, ErrorCode::DimensionMismatch,
                  "intersection probability has the wrong class count");
  detail::require_proper(intervals);

  std::vector<std::size_t> order(c);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pstar[a] > pstar[b]; });

  ReducedIntervals out{IntervalSystem::vacuous(2), {}, {}};
  out.kept.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(j - 1));
  out.merged.assign(order.begin() + static_cast<std::ptrdiff_t>(j - 1), order.end());

  std::vector<double> lower, upper;
  lower.reserve(j);
  upper.reserve(j);
  double kept_lower = 0.0, kept_upper = 0.0;
  for (std::size_t k : out.kept) {
    lower.push_back(intervals.lower(k));
    upper.push_back(intervals.upper(k));
    kept_lower += intervals.lower(k);
    kept_upper += intervals.upper(k);
  }
  double merged_lower = 0.0, merged_upper = 0.0;
  for (std::size_t k : out.merged) {
    merged_lower += intervals.lower(k);
    merged_upper += intervals.upper(k);
  }

  double lo = 0.0, hi = 1.0;
  switch (rule) {
    case MergeRule::Coherent:
      lo = std::max(merged_lower, 1.0 - kept_upper);
      hi = std::min(merged_upper, 1.0 - kept_lower);
      break;
    case MergeRule::AsPrinted:
      lo = std::max(1.0 - merged_upper, kept_lower);
      hi = std::min(1.0 - merged_lower, kept_upper);
      break;
  }
  lo = std::clamp(lo, 0.0, 1.0);
  hi = std::clamp(hi, 0.0, 1.0);
  // Both coherent terms are ordered in exact arithmetic; absorb rounding.
  if (rule == MergeRule::Coherent && lo > hi) lo = hi;
  lower.push_back(lo);
  upper.push_back(hi);

  out.intervals = IntervalSystem(std::move(lower), std::move(upper));
  return out;
}

std::vector<double> coarsen(const ReducedIntervals& reduced, std::span<const double> p) {
  std::vector<double> out;
  out.reserve(reduced.kept.size() + 1);
  for (std::size_t k : reduced.kept) out.push_back(p[k]);
  double rest = 0.0;
  for (std::size_t k : reduced.merged) rest += p[k];
  out.push_back(rest);
  return out;
}

std::size_t default_pia_j(std::size_t classes) noexcept {
  if (classes >= 500) return 50;
  if (classes >= 50) return 20;
  return classes;
}

}  // namespace credal
