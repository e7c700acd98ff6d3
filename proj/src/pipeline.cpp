#include "credal/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "credal/intervals.hpp"
#include "credal/set_functions.hpp"

namespace credal {

const char* to_string(Measure m) noexcept {
  switch (m) {
    case Measure::Baseline: return "baseline";
    case Measure::CredalEntropy: return "credal-entropy";
    case Measure::CredalGh: return "credal-gh";
  }
  return "?";
}

const char* to_string(UncertaintyKind u) noexcept {
  switch (u) {
    case UncertaintyKind::Total: return "tu";
    case UncertaintyKind::Aleatoric: return "au";
    case UncertaintyKind::Epistemic: return "eu";
  }
  return "?";
}

const char* to_string(ReportFormat f) noexcept {
  return f == ReportFormat::Json ? "json" : "csv";
}

Measure parse_measure(const std::string& s) {
  if (s == "baseline") return Measure::Baseline;
  if (s == "credal-entropy") return Measure::CredalEntropy;
  if (s == "credal-gh") return Measure::CredalGh;
  throw Error(ErrorCode::InvalidArgument, "unknown measure '" + s + "'");
}

UncertaintyKind parse_uncertainty(const std::string& s) {
  if (s == "tu") return UncertaintyKind::Total;
  if (s == "au") return UncertaintyKind::Aleatoric;
  if (s == "eu") return UncertaintyKind::Epistemic;
  throw Error(ErrorCode::InvalidArgument, "unknown uncertainty '" + s + "'");
}

ReportFormat parse_format(const std::string& s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "csv") return ReportFormat::Csv;
  throw Error(ErrorCode::InvalidArgument, "unknown format '" + s + "'");
}

void RunConfig::check() const {
  detail::require(!pia_j || *pia_j >= 2, ErrorCode::InvalidJ, "--pia-j must be at least 2");
  detail::require(ece_bins >= 1, ErrorCode::InvalidArgument, "--ece-bins must be at least 1");
  detail::require(threads >= 1, ErrorCode::InvalidArgument, "--threads must be at least 1");
}

CredalOptions RunConfig::credal_options() const {
  CredalOptions options;
  options.lower.exact_threshold = exact_threshold;
  options.lower.random_orders = random_orders;
  options.lower.seed = seed;
  return options;
}

InstanceResult analyze_instance(const PredictionSet& preds, const RunConfig& config,
                                std::string id) {
  InstanceResult out;
  out.id = std::move(id);
  out.classes = preds.classes();
  out.samples = preds.samples();
  out.baseline = baseline_decomposition(preds);
  const auto avg = average_prediction(preds);
  out.average.assign(avg.values().begin(), avg.values().end());

  const IntervalSystem intervals = extract_intervals(preds);
  const auto inter = intersection_probability_detailed(intervals);
  out.intersection.assign(inter.probability.values().begin(), inter.probability.values().end());
  out.alpha = inter.alpha;
  out.alpha_clamped = inter.alpha_clamped;

  IntervalSystem working = intervals;
  if (config.pia_j && *config.pia_j < preds.classes()) {
    working = approximate_intervals(intervals, inter.probability, *config.pia_j, config.merge_rule)
                  .intervals;
  }
  out.reduced_classes = working.size();

  const auto options = config.credal_options();
  const auto upper = upper_entropy(working, options.upper);
  const auto lower = lower_entropy(working, options.lower);
  out.credal = UncertaintyTriple::from_total_and_aleatoric(upper.value, lower.value);
  out.lower_heuristic = lower.heuristic;

  if (config.with_gh || config.measure == Measure::CredalGh) {
    out.gh = generalized_hartley(working);
  }
  return out;
}

UncertaintyTriple measure_triple(const InstanceResult& result, const RunConfig& config) {
  switch (config.measure) {
    case Measure::Baseline: return result.baseline;
    case Measure::CredalEntropy: return result.credal;
    case Measure::CredalGh: {
      // Non-specificity as EU; the remainder of the upper entropy is the AU.
      const double gh = result.gh.value_or(0.0);
      return {result.credal.tu, result.credal.tu - gh, gh};
    }
  }
  return result.credal;
}

double uncertainty_score(const InstanceResult& result, const RunConfig& config) {
  const auto t = measure_triple(result, config);
  switch (config.uncertainty) {
    case UncertaintyKind::Total: return t.tu;
    case UncertaintyKind::Aleatoric: return t.au;
    case UncertaintyKind::Epistemic: return t.eu;
  }
  return t.eu;
}

void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::size_t error_index = n;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
}

std::vector<InstanceResult> analyze_batch(const LabeledBatch& batch, const RunConfig& config) {
  config.check();
  std::vector<std::optional<InstanceResult>> slots(batch.size());
  parallel_for(batch.size(), config.threads, [&](std::size_t i) {
    std::string id = batch.ids.empty() ? std::to_string(i) : batch.ids[i];
    try {
      slots[i] = analyze_instance(batch.instances[i], config, std::move(id));
    } catch (const Error& e) {
      throw Error(e.code(), "instance " + std::to_string(i) + ": " + e.what());
    }
  });
  std::vector<InstanceResult> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

OodResult evaluate_ood(const LabeledBatch& id_batch, const LabeledBatch& ood_batch,
                       const RunConfig& config) {
  detail::require(id_batch.size() > 0 && ood_batch.size() > 0, ErrorCode::EmptyInput,
                  "both ID and OOD files need at least one instance");
  OodResult out;
  for (const auto& r : analyze_batch(id_batch, config)) out.id_scores.push_back(uncertainty_score(r, config));
  for (const auto& r : analyze_batch(ood_batch, config)) out.ood_scores.push_back(uncertainty_score(r, config));
  out.report = detection_report(out.id_scores, out.ood_scores);
  return out;
}

CalibrationComparison evaluate_calibration(const LabeledBatch& batch, const RunConfig& config) {
  detail::require(batch.labels.has_value(), ErrorCode::InvalidArgument,
                  "calibration needs ground-truth labels");
  batch.check();
  config.check();
  std::vector<std::optional<ProbabilityVector>> averaged(batch.size()), intersection(batch.size());
  parallel_for(batch.size(), config.threads, [&](std::size_t i) {
    const auto& preds = batch.instances[i];
    averaged[i] = average_prediction(preds);
    intersection[i] = intersection_probability(extract_intervals(preds));
  });
  auto unwrap = [](std::vector<std::optional<ProbabilityVector>>& v) {
    std::vector<ProbabilityVector> out;
    out.reserve(v.size());
    for (auto& p : v) out.push_back(std::move(*p));
    return out;
  };
  const auto avg = unwrap(averaged);
  const auto inter = unwrap(intersection);
  CalibrationComparison out;
  out.instances = batch.size();
  out.averaged = calibration_report(avg, *batch.labels, config.ece_bins);
  out.intersection = calibration_report(inter, *batch.labels, config.ece_bins);
  return out;
}

}  // namespace credal
