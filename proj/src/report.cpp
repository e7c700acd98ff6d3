#include "credal/report.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "credal/io.hpp"

namespace credal::report {

namespace {

void dump_into(const Json& v, std::string& out) {
  switch (v.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ',';
        first = false;
        out += Json(key).dump();
        out += ':';
        dump_into(item, out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += ',';
        dump_into(v[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      const double d = v.get<double>();
      out += std::isfinite(d) ? format_double(d) : "null";
      break;
    }
    default:
      out += v.dump();
  }
}

std::string csv_preamble(const Json& meta) {
  return "# " + dump(meta) + "\n";
}

std::string join_csv(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) line += ',';
    line += cells[i];
  }
  line += '\n';
  return line;
}

Json triple_json(const UncertaintyTriple& t) {
  Json j;
  j["tu"] = t.tu;
  j["au"] = t.au;
  j["eu"] = t.eu;
  return j;
}

Json calibration_json(const CalibrationReport& r) {
  Json j;
  j["accuracy"] = r.accuracy;
  j["ece"] = r.ece;
  j["nll"] = r.nll;
  j["bins"] = r.bins;
  return j;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  std::string s(buf);
  // Keep integral values recognisable as floats.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string dump(const Json& value) {
  std::string out;
  dump_into(value, out);
  return out;
}

Json config_json(const RunConfig& config, const std::vector<std::string>& inputs) {
  Json c;
  c["inputs"] = inputs;
  c["measure"] = to_string(config.measure);
  c["uncertainty"] = to_string(config.uncertainty);
  c["pia_j"] = config.pia_j ? Json(*config.pia_j) : Json(nullptr);
  c["pia_merge_rule"] = config.merge_rule == MergeRule::Coherent ? "coherent" : "as-printed";
  c["ece_bins"] = config.ece_bins;
  c["ingest_tolerance"] = config.ingest_tolerance;
  c["membership_tolerance"] = config.membership_tolerance;
  c["exact_threshold"] = config.exact_threshold;
  c["random_orders"] = config.random_orders;
  c["seed"] = config.seed;
  c["with_gh"] = config.with_gh;
  c["format"] = to_string(config.format);
  return c;
}

Json metadata(const std::string& command, const RunConfig& config,
              const std::vector<std::string>& inputs) {
  Json m;
  m["tool"] = kToolName;
  m["version"] = kToolVersion;
  m["command"] = command;
  m["config"] = config_json(config, inputs);
  Json conventions;
  conventions["entropy"] = "bits (log base 2)";
  conventions["nll"] = "nats (natural log)";
  conventions["class_index"] = "0-based";
  conventions["ood_labels"] = "ID=0, OOD=1 (OOD positive)";
  m["conventions"] = conventions;
  return m;
}

std::string uq_report(const std::vector<InstanceResult>& results, const RunConfig& config,
                      const std::vector<std::string>& inputs) {
  const Json meta = metadata("uq", config, inputs);
  if (config.format == ReportFormat::Json) {
    Json doc;
    doc["meta"] = meta;
    Json rows = Json::array();
    for (const auto& r : results) {
      Json row;
      row["id"] = r.id;
      row["samples"] = r.samples;
      row["classes"] = r.classes;
      row["reduced_classes"] = r.reduced_classes;
      row["baseline"] = triple_json(r.baseline);
      row["credal"] = triple_json(r.credal);
      row["gh"] = r.gh ? Json(*r.gh) : Json(nullptr);
      row["score"] = uncertainty_score(r, config);
      row["alpha"] = r.alpha;
      row["alpha_clamped"] = r.alpha_clamped;
      row["lower_entropy_heuristic"] = r.lower_heuristic;
      row["intersection_probability"] = r.intersection;
      rows.push_back(std::move(row));
    }
    doc["instances"] = std::move(rows);
    return dump(doc) + "\n";
  }

  std::string out = csv_preamble(meta);
  std::size_t classes = results.empty() ? 0 : results.front().classes;
  std::vector<std::string> header = {"id",        "samples",   "classes",   "reduced_classes",
                                     "baseline_tu", "baseline_au", "baseline_eu", "credal_tu",
                                     "credal_au", "credal_eu", "gh",        "score",
                                     "alpha",     "alpha_clamped", "lower_entropy_heuristic"};
  for (std::size_t k = 0; k < classes; ++k) header.push_back("pstar_" + std::to_string(k));
  out += join_csv(header);
  for (const auto& r : results) {
    std::vector<std::string> cells = {r.id,
                                      std::to_string(r.samples),
                                      std::to_string(r.classes),
                                      std::to_string(r.reduced_classes),
                                      format_double(r.baseline.tu),
                                      format_double(r.baseline.au),
                                      format_double(r.baseline.eu),
                                      format_double(r.credal.tu),
                                      format_double(r.credal.au),
                                      format_double(r.credal.eu),
                                      r.gh ? format_double(*r.gh) : "",
                                      format_double(uncertainty_score(r, config)),
                                      format_double(r.alpha),
                                      r.alpha_clamped ? "1" : "0",
                                      r.lower_heuristic ? "1" : "0"};
    for (double v : r.intersection) cells.push_back(format_double(v));
    out += join_csv(cells);
  }
  return out;
}

std::string ood_report(const OodResult& result, const RunConfig& config,
                       const std::vector<std::string>& inputs) {
  const Json meta = metadata("ood", config, inputs);
  const auto& r = result.report;
  if (config.format == ReportFormat::Json) {
    Json doc;
    doc["meta"] = meta;
    Json det;
    det["measure"] = to_string(config.measure);
    det["uncertainty"] = to_string(config.uncertainty);
    det["auroc"] = r.auroc;
    det["auprc"] = r.auprc;
    det["n_id"] = r.n_id;
    det["n_ood"] = r.n_ood;
    doc["detection"] = det;
    return dump(doc) + "\n";
  }
  std::string out = csv_preamble(meta);
  out += join_csv({"measure", "uncertainty", "auroc", "auprc", "n_id", "n_ood"});
  out += join_csv({to_string(config.measure), to_string(config.uncertainty),
                   format_double(r.auroc), format_double(r.auprc), std::to_string(r.n_id),
                   std::to_string(r.n_ood)});
  return out;
}

std::string calibration_report(const CalibrationComparison& result, const RunConfig& config,
                               const std::vector<std::string>& inputs) {
  const Json meta = metadata("calibrate", config, inputs);
  if (config.format == ReportFormat::Json) {
    Json doc;
    doc["meta"] = meta;
    Json cal;
    cal["instances"] = result.instances;
    cal["averaged_probability"] = calibration_json(result.averaged);
    cal["intersection_probability"] = calibration_json(result.intersection);
    doc["calibration"] = cal;
    return dump(doc) + "\n";
  }
  std::string out = csv_preamble(meta);
  out += join_csv({"predictor", "instances", "accuracy", "ece", "nll", "bins"});
  auto row = [&](const char* name, const CalibrationReport& c) {
    out += join_csv({name, std::to_string(result.instances), format_double(c.accuracy),
                     format_double(c.ece), format_double(c.nll), std::to_string(c.bins)});
  };
  row("averaged_probability", result.averaged);
  row("intersection_probability", result.intersection);
  return out;
}

void write_report(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  io::write_text(path, text);
}

}  // namespace credal::report
