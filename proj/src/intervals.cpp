#include "credal/intervals.hpp"

#include <algorithm>
#include <cmath>

#include "credal/kernels.hpp"

namespace credal {

namespace detail {
void require_proper(const IntervalSystem& intervals) {
  require(is_proper(intervals), ErrorCode::ImproperIntervals,
          "sum(lower)=" + std::to_string(intervals.lower_sum()) +
              ", sum(upper)=" + std::to_string(intervals.upper_sum()));
}
}  // namespace detail

IntervalSystem extract_intervals(const PredictionSet& preds) {
  const std::size_t c = preds.classes();
  const auto first = preds.row(0);
  std::vector<double> lower(first.begin(), first.end());
  std::vector<double> upper(first.begin(), first.end());
  const auto& k = kernels::active();
  for (std::size_t n = 1; n < preds.samples(); ++n) {
    k.min_max_update(preds.row(n).data(), lower.data(), upper.data(), c);
  }
  return IntervalSystem(std::move(lower), std::move(upper));
}

bool is_proper(const IntervalSystem& intervals, double tolerance) {
  const auto& k = kernels::active();
  const double lo = k.sum(intervals.lower().data(), intervals.size());
  const double hi = k.sum(intervals.upper().data(), intervals.size());
  return lo <= 1.0 + tolerance && hi >= 1.0 - tolerance;
}

bool contains(const IntervalSystem& intervals, const ProbabilityVector& p, double tolerance) {
  detail::require(p.size() == intervals.size(), ErrorCode::DimensionMismatch,
                  "vector has " + std::to_string(p.size()) + " classes, intervals have " +
                      std::to_string(intervals.size()));
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] < intervals.lower(k) - tolerance || p[k] > intervals.upper(k) + tolerance) {
      return false;
    }
  }
  return true;
}

IntervalSystem tighten(const IntervalSystem& intervals) {
  detail::require_proper(intervals);
  const std::size_t c = intervals.size();
  const double sum_lower = intervals.lower_sum();
  const double sum_upper = intervals.upper_sum();
  std::vector<double> lower(c);
  std::vector<double> upper(c);
  for (std::size_t k = 0; k < c; ++k) {
    const double lo = intervals.lower(k);
    const double hi = intervals.upper(k);
    const double others_upper = sum_upper - hi;
    const double others_lower = sum_lower - lo;
    lower[k] = std::clamp(std::max(lo, 1.0 - others_upper), lo, hi);
    upper[k] = std::clamp(std::min(hi, 1.0 - others_lower), lower[k], hi);
  }
  return IntervalSystem(std::move(lower), std::move(upper));
}

IntersectionResult intersection_probability_detailed(const IntervalSystem& intervals) {
  detail::require_proper(intervals);
  const std::size_t c = intervals.size();
  const double sum_lower = intervals.lower_sum();
  double width = 0.0;
  for (std::size_t k = 0; k < c; ++k) width += intervals.upper(k) - intervals.lower(k);

  if (width == 0.0) {
    return {ProbabilityVector::validated(intervals.lower()), 0.0, false};
  }

  const double raw_alpha = (1.0 - sum_lower) / width;
  const double alpha = std::clamp(raw_alpha, 0.0, 1.0);
  std::vector<double> p(c);
  for (std::size_t k = 0; k < c; ++k) {
    p[k] = intervals.lower(k) + alpha * (intervals.upper(k) - intervals.lower(k));
  }
  return {ProbabilityVector::validated(std::move(p)), alpha, alpha != raw_alpha};
}

}  // namespace credal
