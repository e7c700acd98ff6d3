#include "credal/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace credal {

namespace {

struct Scored {
  double score;
  bool positive;
};

std::vector<Scored> pooled(std::span<const double> id_scores, std::span<const double> ood_scores) {
  detail::require(!id_scores.empty() && !ood_scores.empty(), ErrorCode::EmptyInput,
                  "both ID and OOD score sets must be non-empty");
  std::vector<Scored> all;
  all.reserve(id_scores.size() + ood_scores.size());
  for (double s : id_scores) {
    detail::require(std::isfinite(s), ErrorCode::NonFiniteScore, "non-finite ID score");
    all.push_back({s, false});
  }
  for (double s : ood_scores) {
    detail::require(std::isfinite(s), ErrorCode::NonFiniteScore, "non-finite OOD score");
    all.push_back({s, true});
  }
  return all;
}

void check_labels(std::span<const ProbabilityVector> predictions,
                  std::span<const std::size_t> labels) {
  detail::require(predictions.size() == labels.size(), ErrorCode::LengthMismatch,
                  std::to_string(predictions.size()) + " predictions vs " +
                      std::to_string(labels.size()) + " labels");
  detail::require(!predictions.empty(), ErrorCode::EmptyInput, "no predictions");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    detail::require(labels[i] < predictions[i].size(), ErrorCode::LabelOutOfRange,
                    "label " + std::to_string(labels[i]) + " at row " + std::to_string(i));
  }
}

}  // namespace

double auroc(std::span<const double> id_scores, std::span<const double> ood_scores) {
  auto all = pooled(id_scores, ood_scores);
  std::sort(all.begin(), all.end(), [](const Scored& a, const Scored& b) { return a.score < b.score; });

  // Twice the positive rank sum keeps midranks integral.
  double twice_rank_sum = 0.0;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    std::size_t positives = 0;
    while (j < all.size() && all[j].score == all[i].score) positives += all[j++].positive;
    // ranks i+1 .. j averaged: (i + 1 + j) / 2
    twice_rank_sum += static_cast<double>(positives) * static_cast<double>(i + 1 + j);
    i = j;
  }
  const auto n_pos = static_cast<double>(ood_scores.size());
  const auto n_neg = static_cast<double>(id_scores.size());
  const double twice_u = twice_rank_sum - n_pos * (n_pos + 1.0);
  return (twice_u / 2.0) / (n_pos * n_neg);
}

double auprc(std::span<const double> id_scores, std::span<const double> ood_scores) {
  auto all = pooled(id_scores, ood_scores);
  std::sort(all.begin(), all.end(), [](const Scored& a, const Scored& b) { return a.score > b.score; });

  const auto n_pos = static_cast<double>(ood_scores.size());
  double tp = 0.0, fp = 0.0, precision_sum = 0.0;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    double group_pos = 0.0;
    while (j < all.size() && all[j].score == all[i].score) {
      if (all[j].positive) {
        group_pos += 1.0;
      } else {
        fp += 1.0;
      }
      ++j;
    }
    tp += group_pos;
    if (group_pos > 0.0) precision_sum += group_pos * (tp / (tp + fp));
    i = j;
  }
  return precision_sum / n_pos;
}

DetectionReport detection_report(std::span<const double> id_scores,
                                 std::span<const double> ood_scores) {
  return {auroc(id_scores, ood_scores), auprc(id_scores, ood_scores), id_scores.size(),
          ood_scores.size()};
}

double ece(std::span<const ProbabilityVector> predictions, std::span<const std::size_t> labels,
           std::size_t bins) {
  check_labels(predictions, labels);
  detail::require(bins >= 1, ErrorCode::InvalidArgument, "ECE needs at least one bin");

  std::vector<double> conf_sum(bins, 0.0), correct(bins, 0.0), count(bins, 0.0);
  const auto g = static_cast<double>(bins);
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const std::size_t pred = predictions[i].argmax();
    const double conf = predictions[i][pred];
    // Bin b (1-based) covers ((b-1)/G, b/G]; confidence 0 lands in bin 1.
    auto b = static_cast<std::size_t>(std::ceil(conf * g));
    b = std::clamp<std::size_t>(b, 1, bins) - 1;
    conf_sum[b] += conf;
    correct[b] += (pred == labels[i]) ? 1.0 : 0.0;
    count[b] += 1.0;
  }
  const auto n = static_cast<double>(predictions.size());
  double total = 0.0;
  for (std::size_t b = 0; b < bins; ++b) {
    if (count[b] == 0.0) continue;
    total += (count[b] / n) * std::abs(correct[b] / count[b] - conf_sum[b] / count[b]);
  }
  return total;
}

double nll(std::span<const ProbabilityVector> predictions, std::span<const std::size_t> labels) {
  check_labels(predictions, labels);
  double total = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    total -= std::log(std::max(predictions[i][labels[i]], kNllFloor));
  }
  return total / static_cast<double>(predictions.size());
}

double accuracy(std::span<const ProbabilityVector> predictions,
                std::span<const std::size_t> labels) {
  check_labels(predictions, labels);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) hits += predictions[i].argmax() == labels[i];
  return static_cast<double>(hits) / static_cast<double>(predictions.size());
}

CalibrationReport calibration_report(std::span<const ProbabilityVector> predictions,
                                     std::span<const std::size_t> labels, std::size_t bins) {
  return {ece(predictions, labels, bins), nll(predictions, labels), accuracy(predictions, labels),
          bins};
}

}  // namespace credal
