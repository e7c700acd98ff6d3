#include "credal/set_functions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace credal {

namespace {

constexpr double kMassDropThreshold = 1e-12;

void require_gh_size(const IntervalSystem& intervals, std::size_t max_classes) {
  detail::require(intervals.size() <= max_classes && intervals.size() < 32,
                  ErrorCode::TooManyClasses,
                  std::to_string(intervals.size()) + " classes exceeds the limit of " +
                      std::to_string(max_classes) + "; reduce the system first");
}

}  // namespace

double lower_probability(const IntervalSystem& intervals, Subset subset) {
  const std::size_t c = intervals.size();
  detail::require(c >= 32 || (subset >> c) == 0, ErrorCode::IndexOutOfRange,
                  "subset mask references a class >= " + std::to_string(c));
  double inside_lower = 0.0;
  double outside_upper = 0.0;
  for (std::size_t k = 0; k < c; ++k) {
    if (k < 32 && ((subset >> k) & 1U)) {
      inside_lower += intervals.lower(k);
    } else {
      outside_upper += intervals.upper(k);
    }
  }
  return std::max(inside_lower, 1.0 - outside_upper);
}

double lower_probability(const IntervalSystem& intervals, std::span<const std::size_t> subset) {
  const std::size_t c = intervals.size();
  std::vector<bool> member(c, false);
  for (std::size_t k : subset) {
    detail::require(k < c, ErrorCode::IndexOutOfRange,
                    "class index " + std::to_string(k) + " out of range");
    member[k] = true;
  }
  double inside_lower = 0.0;
  double outside_upper = 0.0;
  for (std::size_t k = 0; k < c; ++k) {
    if (member[k]) {
      inside_lower += intervals.lower(k);
    } else {
      outside_upper += intervals.upper(k);
    }
  }
  return std::max(inside_lower, 1.0 - outside_upper);
}

std::vector<double> lower_probability_table(const IntervalSystem& intervals,
                                            std::size_t max_classes) {
  require_gh_size(intervals, max_classes);
  const std::size_t c = intervals.size();
  const std::size_t n = std::size_t{1} << c;
  const Subset full = static_cast<Subset>(n - 1);

  // Subset sums built from the subset without its lowest bit.
  std::vector<double> lower_sum(n, 0.0);
  std::vector<double> upper_sum(n, 0.0);
  for (std::size_t mask = 1; mask < n; ++mask) {
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    const std::size_t prev = mask & (mask - 1);
    lower_sum[mask] = lower_sum[prev] + intervals.lower(low);
    upper_sum[mask] = upper_sum[prev] + intervals.upper(low);
  }

  std::vector<double> nu(n);
  for (std::size_t mask = 0; mask < n; ++mask) {
    const std::size_t complement = full & ~static_cast<Subset>(mask);
    nu[mask] = std::max(lower_sum[mask], 1.0 - upper_sum[complement]);
  }
  nu[0] = 0.0;
  nu[full] = 1.0;
  return nu;
}

MassAssignment mobius_masses(const IntervalSystem& intervals, std::size_t max_classes) {
  std::vector<double> m = lower_probability_table(intervals, max_classes);
  const std::size_t c = intervals.size();
  const std::size_t n = m.size();
  for (std::size_t bit = 0; bit < c; ++bit) {
    const std::size_t b = std::size_t{1} << bit;
    for (std::size_t mask = 0; mask < n; ++mask) {
      if (mask & b) m[mask] -= m[mask ^ b];
    }
  }

  MassAssignment out;
  out.classes = c;
  for (std::size_t mask = 1; mask < n; ++mask) {
    if (std::abs(m[mask]) >= kMassDropThreshold) {
      out.masses.emplace_back(static_cast<Subset>(mask), m[mask]);
    }
  }
  return out;
}

double generalized_hartley(const MassAssignment& masses) noexcept {
  double gh = 0.0;
  for (const auto& [subset, m] : masses.masses) {
    const int size = std::popcount(subset);
    if (size > 1) gh += m * std::log2(static_cast<double>(size));
  }
  return gh;
}

double generalized_hartley(const IntervalSystem& intervals, std::size_t max_classes) {
  return generalized_hartley(mobius_masses(intervals, max_classes));
}

}  // namespace credal
