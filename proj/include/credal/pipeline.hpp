#pragma once

// Batch evaluation pipeline behind the command-line tool: per-instance
// uncertainty, OOD detection and calibration comparisons.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "credal/entropy.hpp"
#include "credal/metrics.hpp"
#include "credal/pia.hpp"
#include "credal/types.hpp"

namespace credal {

enum class Measure { Baseline, CredalEntropy, CredalGh };
enum class UncertaintyKind { Total, Aleatoric, Epistemic };
enum class ReportFormat { Json, Csv };

const char* to_string(Measure m) noexcept;
const char* to_string(UncertaintyKind u) noexcept;
const char* to_string(ReportFormat f) noexcept;
Measure parse_measure(const std::string& s);
UncertaintyKind parse_uncertainty(const std::string& s);
ReportFormat parse_format(const std::string& s);

struct RunConfig {
  Measure measure = Measure::CredalEntropy;
  UncertaintyKind uncertainty = UncertaintyKind::Epistemic;
  std::optional<std::size_t> pia_j;
  MergeRule merge_rule = MergeRule::Coherent;
  std::size_t ece_bins = kDefaultEceBins;
  double ingest_tolerance = kIngestTolerance;
  double membership_tolerance = kInternalTolerance;
  std::size_t exact_threshold = 16;
  std::size_t random_orders = 8;
  std::uint64_t seed = 0;
  bool with_gh = false;
  ReportFormat format = ReportFormat::Json;
  std::size_t threads = 1;

  /// Throws InvalidArgument on J < 2 or bins < 1.
  void check() const;
  CredalOptions credal_options() const;
};

struct InstanceResult {
  std::string id;
  std::size_t classes = 0;
  std::size_t samples = 0;
  UncertaintyTriple baseline;
  UncertaintyTriple credal;
  std::optional<double> gh;
  std::vector<double> intersection;
  std::vector<double> average;
  double alpha = 0.0;
  bool alpha_clamped = false;
  bool lower_heuristic = false;
  std::size_t reduced_classes = 0;  // J actually used; equals classes when not reduced
};

InstanceResult analyze_instance(const PredictionSet& preds, const RunConfig& config,
                                std::string id = {});

/// The (tu, au, eu) triple selected by config.measure.
UncertaintyTriple measure_triple(const InstanceResult& result, const RunConfig& config);
double uncertainty_score(const InstanceResult& result, const RunConfig& config);

/// Runs analyze_instance over the batch on config.threads workers; results keep input order.
std::vector<InstanceResult> analyze_batch(const LabeledBatch& batch, const RunConfig& config);

struct OodResult {
  DetectionReport report;
  std::vector<double> id_scores;
  std::vector<double> ood_scores;
};

OodResult evaluate_ood(const LabeledBatch& id_batch, const LabeledBatch& ood_batch,
                       const RunConfig& config);

struct CalibrationComparison {
  CalibrationReport averaged;      // sample average as the point prediction
  CalibrationReport intersection;  // intersection probability as the point prediction
  std::size_t instances = 0;
};

CalibrationComparison evaluate_calibration(const LabeledBatch& batch, const RunConfig& config);

/// Runs fn(i) for i in [0, n) on up to `threads` workers. If any call throws,
/// the exception from the lowest index is rethrown after all workers stop.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

}  // namespace credal
