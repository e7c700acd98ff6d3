#pragma once

// OOD-detection and calibration metrics.
//
// Detection treats in-distribution instances as negatives (label 0) and OOD
// instances as positives (label 1), with the uncertainty score as the
// classifier output. Argmax ties go to the lowest class index everywhere.

#include <cstddef>
#include <span>
#include <vector>

#include "credal/types.hpp"

namespace credal {

struct DetectionReport {
  double auroc = 0.0;
  double auprc = 0.0;
  std::size_t n_id = 0;
  std::size_t n_ood = 0;
};

struct CalibrationReport {
  double ece = 0.0;
  double nll = 0.0;  // nats
  double accuracy = 0.0;
  std::size_t bins = 0;
};

inline constexpr std::size_t kDefaultEceBins = 15;
inline constexpr double kNllFloor = 1e-12;

/// P(ood score > id score) + 0.5 P(tie), via midranks.
double auroc(std::span<const double> id_scores, std::span<const double> ood_scores);

/// Average precision with OOD positive. Equal scores form one threshold group.
double auprc(std::span<const double> id_scores, std::span<const double> ood_scores);

DetectionReport detection_report(std::span<const double> id_scores,
                                 std::span<const double> ood_scores);

double ece(std::span<const ProbabilityVector> predictions, std::span<const std::size_t> labels,
           std::size_t bins = kDefaultEceBins);
double nll(std::span<const ProbabilityVector> predictions, std::span<const std::size_t> labels);
double accuracy(std::span<const ProbabilityVector> predictions,
                std::span<const std::size_t> labels);

CalibrationReport calibration_report(std::span<const ProbabilityVector> predictions,
                                     std::span<const std::size_t> labels,
                                     std::size_t bins = kDefaultEceBins);

}  // namespace credal
