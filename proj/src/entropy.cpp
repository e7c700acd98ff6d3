#include "credal/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>

#include "credal/intervals.hpp"
#include "credal/kernels.hpp"

namespace credal {

namespace {

inline double plogp(double p) noexcept { return p > 0.0 ? -p * std::log2(p) : 0.0; }

// Symmetric vertices can differ in the last few bits of their entropy; values
// this close count as tied and fall through to the lexicographic comparison.
constexpr double kTieSlack = 1e-13;

struct Candidate {
  double value;
  std::vector<double> point;
};

bool better(double value, std::span<const double> point, const std::optional<Candidate>& best) {
  if (!best) return true;
  if (value < best->value - kTieSlack) return true;
  if (value > best->value + kTieSlack) return false;
  return std::lexicographical_compare(point.begin(), point.end(), best->point.begin(),
                                      best->point.end());
}

// Degenerate case inside the properness tolerance: the set collapses onto one
// of the bound vectors.
std::optional<ProbabilityVector> collapsed_point(const IntervalSystem& intervals) {
  if (intervals.lower_sum() >= 1.0) return ProbabilityVector::validated(intervals.lower());
  if (intervals.upper_sum() <= 1.0) return ProbabilityVector::validated(intervals.upper());
  return std::nullopt;
}

EntropyResult finish(std::vector<double> point, bool heuristic) {
  auto p = ProbabilityVector::validated(std::move(point));
  const double h = shannon_entropy(p);
  return {h, std::move(p), heuristic};
}

EntropyResult lower_exact(const IntervalSystem& intervals) {
  const std::size_t c = intervals.size();
  const auto lo = intervals.lower();
  const auto hi = intervals.upper();
  std::vector<double> h_lo(c), h_hi(c);
  for (std::size_t k = 0; k < c; ++k) {
    h_lo[k] = plogp(lo[k]);
    h_hi[k] = plogp(hi[k]);
  }

  constexpr double kSlackTolerance = 1e-12;
  std::optional<Candidate> best;
  std::vector<double> point(c);
  std::vector<std::size_t> others;
  others.reserve(c - 1);
  const std::uint64_t patterns = std::uint64_t{1} << (c - 1);

  for (std::size_t slack = 0; slack < c; ++slack) {
    others.clear();
    for (std::size_t k = 0; k < c; ++k) {
      if (k != slack) others.push_back(k);
    }
    for (std::uint64_t mask = 0; mask < patterns; ++mask) {
      double pinned = 0.0;
      double h = 0.0;
      for (std::size_t j = 0; j < others.size(); ++j) {
        const std::size_t k = others[j];
        if ((mask >> j) & 1U) {
          pinned += hi[k];
          h += h_hi[k];
        } else {
          pinned += lo[k];
          h += h_lo[k];
        }
      }
      double rest = 1.0 - pinned;
      if (rest < lo[slack] - kSlackTolerance || rest > hi[slack] + kSlackTolerance) continue;
      rest = std::clamp(rest, lo[slack], hi[slack]);
      h += plogp(rest);
      if (best && h > best->value + kTieSlack) continue;

      for (std::size_t j = 0; j < others.size(); ++j) {
        const std::size_t k = others[j];
        point[k] = ((mask >> j) & 1U) ? hi[k] : lo[k];
      }
      point[slack] = rest;
      if (better(h, point, best)) best = Candidate{h, point};
    }
  }

  detail::require(best.has_value(), ErrorCode::ImproperIntervals,
                  "no feasible vertex found for the interval system");
  return finish(std::move(best->point), false);
}

std::vector<double> greedy_fill(const IntervalSystem& intervals,
                                std::span<const std::size_t> order) {
  std::vector<double> p(intervals.lower().begin(), intervals.lower().end());
  double remaining = 1.0 - intervals.lower_sum();
  for (std::size_t k : order) {
    if (remaining <= 0.0) break;
    const double add = std::min(intervals.upper(k) - intervals.lower(k), remaining);
    p[k] += add;
    remaining -= add;
  }
  return p;
}

EntropyResult lower_heuristic(const IntervalSystem& intervals, const LowerEntropyOptions& options) {
  const std::size_t c = intervals.size();
  std::vector<std::size_t> base(c);
  std::iota(base.begin(), base.end(), std::size_t{0});

  auto ordered_by = [&](auto key) {
    std::vector<std::size_t> order = base;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return key(a) > key(b); });
    return order;
  };

  std::vector<std::vector<std::size_t>> orders;
  orders.push_back(ordered_by([&](std::size_t k) { return intervals.upper(k); }));
  orders.push_back(
      ordered_by([&](std::size_t k) { return intervals.upper(k) - intervals.lower(k); }));
  orders.push_back(ordered_by([&](std::size_t k) { return intervals.lower(k); }));

  std::mt19937_64 rng(options.seed);
  for (std::size_t r = 0; r < options.random_orders; ++r) {
    std::vector<std::size_t> order = base;
    std::shuffle(order.begin(), order.end(), rng);
    orders.push_back(std::move(order));
  }

  std::optional<Candidate> best;
  for (const auto& order : orders) {
    auto p = greedy_fill(intervals, order);
    const double h = shannon_entropy(p);
    if (better(h, p, best)) best = Candidate{h, std::move(p)};
  }
  return finish(std::move(best->point), true);
}

}  // namespace

double shannon_entropy(std::span<const double> p) noexcept {
  double h = 0.0;
  for (double v : p) h += plogp(v);
  return std::max(h, 0.0);
}

ProbabilityVector average_prediction(const PredictionSet& preds) {
  const std::size_t c = preds.classes();
  std::vector<double> acc(c, 0.0);
  const auto& k = kernels::active();
  for (std::size_t n = 0; n < preds.samples(); ++n) k.accumulate(preds.row(n).data(), acc.data(), c);
  const double inv = 1.0 / static_cast<double>(preds.samples());
  for (auto& v : acc) v *= inv;
  return ProbabilityVector::validated(std::move(acc));
}

UncertaintyTriple baseline_decomposition(const PredictionSet& preds) {
  const double tu = shannon_entropy(average_prediction(preds));
  double au = 0.0;
  for (std::size_t n = 0; n < preds.samples(); ++n) au += shannon_entropy(preds.row(n));
  au /= static_cast<double>(preds.samples());
  return UncertaintyTriple::from_total_and_aleatoric(tu, au);
}

EntropyResult upper_entropy(const IntervalSystem& intervals, const WaterFillingOptions& options) {
  detail::require_proper(intervals);
  if (auto p = collapsed_point(intervals)) {
    const double h = shannon_entropy(*p);
    return {h, std::move(*p), false};
  }

  const std::size_t c = intervals.size();
  const double* lo_ptr = intervals.lower().data();
  const double* hi_ptr = intervals.upper().data();
  const auto& k = kernels::active();

  // S(level) = sum clamp(level, lo, hi) is non-decreasing with S(min lo) = sum(lo) <= 1
  // and S(max hi) = sum(hi) >= 1.
  double lo = *std::min_element(intervals.lower().begin(), intervals.lower().end());
  double hi = *std::max_element(intervals.upper().begin(), intervals.upper().end());
  double level = 0.5 * (lo + hi);
  bool converged = false;
  for (int it = 0; it < options.max_iterations; ++it) {
    level = 0.5 * (lo + hi);
    const double s = k.clamp_sum(lo_ptr, hi_ptr, c, level);
    if (std::abs(s - 1.0) <= options.tolerance || level <= lo || level >= hi) {
      converged = true;
      break;
    }
    (s < 1.0 ? lo : hi) = level;
  }
  detail::require(converged, ErrorCode::NoConvergence,
                  "water-filling bisection exceeded " + std::to_string(options.max_iterations) +
                      " iterations");

  std::vector<double> p(c);
  for (std::size_t i = 0; i < c; ++i) p[i] = std::clamp(level, lo_ptr[i], hi_ptr[i]);
  return finish(std::move(p), false);
}

EntropyResult lower_entropy(const IntervalSystem& intervals, const LowerEntropyOptions& options) {
  detail::require_proper(intervals);
  if (auto p = collapsed_point(intervals)) {
    const double h = shannon_entropy(*p);
    return {h, std::move(*p), false};
  }
  bool exact = false;
  switch (options.mode) {
    case LowerEntropyMode::Exact:
      detail::require(intervals.size() <= 24, ErrorCode::TooManyClasses,
                      "exact lower entropy is limited to 24 classes");
      exact = true;
      break;
    case LowerEntropyMode::Heuristic: exact = false; break;
    case LowerEntropyMode::Auto: exact = intervals.size() <= options.exact_threshold; break;
  }
  return exact ? lower_exact(intervals) : lower_heuristic(intervals, options);
}

UncertaintyTriple credal_decomposition(const IntervalSystem& intervals, const CredalOptions& options) {
  const double tu = upper_entropy(intervals, options.upper).value;
  const double au = lower_entropy(intervals, options.lower).value;
  return UncertaintyTriple::from_total_and_aleatoric(tu, au);
}

}  // namespace credal
