#include "credal/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace credal {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::SumOutOfTolerance: return "SumOutOfTolerance";
    case ErrorCode::InvalidProbability: return "InvalidProbability";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyPredictionSet: return "EmptyPredictionSet";
    case ErrorCode::InvalidBounds: return "InvalidBounds";
    case ErrorCode::ImproperIntervals: return "ImproperIntervals";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::InvalidJ: return "InvalidJ";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::TooManyClasses: return "TooManyClasses";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NonFiniteScore: return "NonFiniteScore";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::LabelOutOfRange: return "LabelOutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::UnsupportedDtype: return "UnsupportedDtype";
    case ErrorCode::FortranOrderUnsupported: return "FortranOrderUnsupported";
    case ErrorCode::ShapeRankInvalid: return "ShapeRankInvalid";
    case ErrorCode::TruncatedPayload: return "TruncatedPayload";
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::InconsistentC: return "InconsistentC";
    case ErrorCode::HeaderMismatch: return "HeaderMismatch";
    case ErrorCode::DuplicateSample: return "DuplicateSample";
    case ErrorCode::MissingSample: return "MissingSample";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

namespace detail {
void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) throw Error(code, what);
}
}  // namespace detail

using detail::require;

// Renormalization only happens when the sum is off by more than this, which
// keeps validation idempotent: a validated vector is returned bit-identically.
static constexpr double kExactSumSlack = 1e-12;

ProbabilityVector ProbabilityVector::validated(std::vector<double> values, double tolerance) {
  require(values.size() >= 2, ErrorCode::DimensionTooSmall,
          "need at least 2 classes, got " + std::to_string(values.size()));
  for (std::size_t k = 0; k < values.size(); ++k) {
    require(std::isfinite(values[k]), ErrorCode::InvalidProbability,
            "non-finite entry at index " + std::to_string(k));
    require(values[k] >= 0.0, ErrorCode::NegativeEntry,
            "negative entry at index " + std::to_string(k));
  }
  const double sum = std::accumulate(values.begin(), values.end(), 0.0);
  const double deviation = std::abs(sum - 1.0);
  require(deviation <= tolerance, ErrorCode::SumOutOfTolerance,
          "entries sum to " + std::to_string(sum));
  if (deviation > kExactSumSlack) {
    for (auto& v : values) v /= sum;
  }
  return ProbabilityVector(std::move(values));
}

ProbabilityVector ProbabilityVector::validated(std::span<const double> values, double tolerance) {
  return validated(std::vector<double>(values.begin(), values.end()), tolerance);
}

std::size_t ProbabilityVector::argmax() const noexcept {
  return static_cast<std::size_t>(
      std::distance(values_.begin(), std::max_element(values_.begin(), values_.end())));
}

PredictionSet PredictionSet::from_flat(std::span<const double> flat, std::size_t n_samples,
                                       std::size_t n_classes, double tolerance) {
  require(n_samples >= 1, ErrorCode::EmptyPredictionSet, "prediction set has no samples");
  require(n_classes >= 2, ErrorCode::DimensionTooSmall, "need at least 2 classes");
  require(flat.size() == n_samples * n_classes, ErrorCode::DimensionMismatch,
          "flat buffer size does not match samples x classes");
  std::vector<double> data;
  data.reserve(flat.size());
  for (std::size_t n = 0; n < n_samples; ++n) {
    auto row = ProbabilityVector::validated(flat.subspan(n * n_classes, n_classes), tolerance);
    data.insert(data.end(), row.values().begin(), row.values().end());
  }
  return PredictionSet(std::move(data), n_samples, n_classes);
}

PredictionSet PredictionSet::from_rows(const std::vector<std::vector<double>>& rows,
                                       double tolerance) {
  require(!rows.empty(), ErrorCode::EmptyPredictionSet, "prediction set has no samples");
  const std::size_t c = rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * c);
  for (const auto& r : rows) {
    require(r.size() == c, ErrorCode::DimensionMismatch, "rows have different class counts");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return from_flat(flat, rows.size(), c, tolerance);
}

ProbabilityVector PredictionSet::sample(std::size_t n) const {
  return ProbabilityVector::validated(row(n));
}

PredictionSet PredictionSet::with_sample(const ProbabilityVector& extra) const {
  require(extra.size() == n_classes_, ErrorCode::DimensionMismatch,
          "appended sample has a different class count");
  std::vector<double> data = data_;
  data.insert(data.end(), extra.values().begin(), extra.values().end());
  return PredictionSet(std::move(data), n_samples_ + 1, n_classes_);
}

IntervalSystem::IntervalSystem(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  require(lower_.size() == upper_.size(), ErrorCode::DimensionMismatch,
          "lower and upper bounds differ in length");
  require(lower_.size() >= 2, ErrorCode::DimensionTooSmall, "need at least 2 classes");
  for (std::size_t k = 0; k < lower_.size(); ++k) {
    const double lo = lower_[k];
    const double hi = upper_[k];
    require(std::isfinite(lo) && std::isfinite(hi) && lo >= 0.0 && hi <= 1.0 && lo <= hi,
            ErrorCode::InvalidBounds,
            "class " + std::to_string(k) + " has bounds [" + std::to_string(lo) + ", " +
                std::to_string(hi) + "]");
  }
}

double IntervalSystem::lower_sum() const noexcept {
  return std::accumulate(lower_.begin(), lower_.end(), 0.0);
}

double IntervalSystem::upper_sum() const noexcept {
  return std::accumulate(upper_.begin(), upper_.end(), 0.0);
}

IntervalSystem IntervalSystem::vacuous(std::size_t classes) {
  return IntervalSystem(std::vector<double>(classes, 0.0), std::vector<double>(classes, 1.0));
}

IntervalSystem IntervalSystem::point(const ProbabilityVector& p) {
  std::vector<double> v(p.values().begin(), p.values().end());
  return IntervalSystem(v, v);
}

void LabeledBatch::check() const {
  require(ids.empty() || ids.size() == instances.size(), ErrorCode::LengthMismatch,
          "id count does not match instance count");
  const std::size_t c = classes();
  for (const auto& inst : instances) {
    require(inst.classes() == c, ErrorCode::InconsistentC, "instances disagree on class count");
  }
  if (labels) {
    require(labels->size() == instances.size(), ErrorCode::LengthMismatch,
            "label count does not match instance count");
    for (std::size_t y : *labels) {
      require(y < c, ErrorCode::LabelOutOfRange, "label " + std::to_string(y) + " out of range");
    }
  }
}

double MassAssignment::mass(Subset subset) const noexcept {
  auto it = std::lower_bound(masses.begin(), masses.end(), subset,
                             [](const auto& entry, Subset s) { return entry.first < s; });
  return (it != masses.end() && it->first == subset) ? it->second : 0.0;
}

double MassAssignment::total() const noexcept {
  double sum = 0.0;
  for (const auto& [subset, m] : masses) sum += m;
  return sum;
}

}  // namespace credal
