#pragma once

// Domain types shared by every credal module.
//
// Conventions: entropies are in bits (log base 2), NLL is in nats, class
// indices are 0-based. All types are immutable once constructed.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace credal {

inline constexpr double kInternalTolerance = 1e-9;
inline constexpr double kIngestTolerance = 1e-6;

enum class ErrorCode {
  NegativeEntry,
  DimensionTooSmall,
  SumOutOfTolerance,
  InvalidProbability,
  DimensionMismatch,
  EmptyPredictionSet,
  InvalidBounds,
  ImproperIntervals,
  NoConvergence,
  InvalidJ,
  IndexOutOfRange,
  TooManyClasses,
  EmptyInput,
  NonFiniteScore,
  LengthMismatch,
  LabelOutOfRange,
  InvalidArgument,
  // ingest
  BadMagic,
  UnsupportedVersion,
  UnsupportedDtype,
  FortranOrderUnsupported,
  ShapeRankInvalid,
  TruncatedPayload,
  MalformedHeader,
  MalformedLine,
  InconsistentC,
  HeaderMismatch,
  DuplicateSample,
  MissingSample,
  IoFailure,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A point of the probability simplex over C >= 2 classes.
class ProbabilityVector {
 public:
  /// Validates `values` and renormalizes when the sum is off by at most
  /// `tolerance`. Throws Error on negative/non-finite entries, C < 2, or a
  /// sum further than `tolerance` from 1.
  static ProbabilityVector validated(std::span<const double> values,
                                     double tolerance = kInternalTolerance);
  static ProbabilityVector validated(std::vector<double> values,
                                     double tolerance = kInternalTolerance);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t k) const noexcept { return values_[k]; }
  std::span<const double> values() const noexcept { return values_; }
  const double* data() const noexcept { return values_.data(); }

  /// Index of the largest entry; ties go to the lowest index.
  std::size_t argmax() const noexcept;

  friend bool operator==(const ProbabilityVector&, const ProbabilityVector&) = default;

 private:
  explicit ProbabilityVector(std::vector<double> v) : values_(std::move(v)) {}
  std::vector<double> values_;
};

/// N >= 1 sampled probability vectors over a shared C, stored row-major.
class PredictionSet {
 public:
  static PredictionSet from_rows(const std::vector<std::vector<double>>& rows,
                                 double tolerance = kInternalTolerance);
  /// `flat` holds n_samples * n_classes values in row-major order.
  static PredictionSet from_flat(std::span<const double> flat, std::size_t n_samples,
                                 std::size_t n_classes, double tolerance = kInternalTolerance);

  std::size_t samples() const noexcept { return n_samples_; }
  std::size_t classes() const noexcept { return n_classes_; }
  std::span<const double> row(std::size_t n) const noexcept {
    return {data_.data() + n * n_classes_, n_classes_};
  }
  std::span<const double> flat() const noexcept { return data_; }
  ProbabilityVector sample(std::size_t n) const;

  /// Copy of this set with `extra` appended as a new sample.
  PredictionSet with_sample(const ProbabilityVector& extra) const;

 private:
  PredictionSet(std::vector<double> data, std::size_t n, std::size_t c)
      : data_(std::move(data)), n_samples_(n), n_classes_(c) {}
  std::vector<double> data_;
  std::size_t n_samples_ = 0;
  std::size_t n_classes_ = 0;
};

/// Per-class probability bounds. Construction enforces 0 <= lower <= upper <= 1;
/// properness (sum lower <= 1 <= sum upper) is checked by the operations that
/// need it, so improper systems can still be represented and inspected.
class IntervalSystem {
 public:
  IntervalSystem(std::vector<double> lower, std::vector<double> upper);

  std::size_t size() const noexcept { return lower_.size(); }
  std::span<const double> lower() const noexcept { return lower_; }
  std::span<const double> upper() const noexcept { return upper_; }
  double lower(std::size_t k) const noexcept { return lower_[k]; }
  double upper(std::size_t k) const noexcept { return upper_[k]; }
  double lower_sum() const noexcept;
  double upper_sum() const noexcept;

  static IntervalSystem vacuous(std::size_t classes);
  static IntervalSystem point(const ProbabilityVector& p);

  friend bool operator==(const IntervalSystem&, const IntervalSystem&) = default;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

/// Total, aleatoric and epistemic uncertainty in bits; eu == tu - au.
struct UncertaintyTriple {
  double tu = 0.0;
  double au = 0.0;
  double eu = 0.0;

  static UncertaintyTriple from_total_and_aleatoric(double tu, double au) noexcept {
    return {tu, au, tu - au};
  }
};

struct LabeledBatch {
  std::vector<std::string> ids;
  std::vector<PredictionSet> instances;
  std::optional<std::vector<std::size_t>> labels;

  std::size_t size() const noexcept { return instances.size(); }
  std::size_t classes() const noexcept {
    return instances.empty() ? 0 : instances.front().classes();
  }
  /// Throws on mismatched C, label count, or out-of-range labels.
  void check() const;
};

/// Subset of class indices as a bitmask (bit k set means class k included).
using Subset = std::uint32_t;

/// Sparse Möbius masses ordered by ascending bitmask.
struct MassAssignment {
  std::size_t classes = 0;
  std::vector<std::pair<Subset, double>> masses;

  double mass(Subset subset) const noexcept;
  double total() const noexcept;
};

namespace detail {
void require(bool condition, ErrorCode code, const std::string& what);
}

}  // namespace credal
