// credal: batch uncertainty quantification over prediction dumps.
//
//   credal uq INPUT [-o OUT]                  per-instance baseline and credal uncertainty
//   credal ood ID_INPUT OOD_INPUT [-o OUT]    AUROC/AUPRC with OOD as the positive class
//   credal calibrate INPUT [-o OUT]           ACC/ECE/NLL of averaged vs intersection probability
//   credal synth --id-out A --ood-out B       synthetic ID/OOD prediction files
//
// Exit codes: 0 ok, 2 invalid input or arguments, 3 numerical failure, 4 I/O failure.

#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "credal/io.hpp"
#include "credal/kernels.hpp"
#include "credal/pipeline.hpp"
#include "credal/report.hpp"
#include "credal/synth.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

int exit_code_for(credal::ErrorCode code) {
  using credal::ErrorCode;
  switch (code) {
    case ErrorCode::NoConvergence: return kExitNumeric;
    case ErrorCode::IoFailure: return kExitIo;
    default: return kExitInput;
  }
}

struct CliOptions {
  std::string measure = "credal-entropy";
  std::string uncertainty = "eu";
  std::size_t pia_j = 0;
  bool pia_as_printed = false;
  std::size_t ece_bins = credal::kDefaultEceBins;
  std::string format = "json";
  std::uint64_t seed = 0;
  std::size_t exact_threshold = 16;
  std::size_t random_orders = 8;
  double tolerance = credal::kIngestTolerance;
  std::size_t threads = 1;
  bool gh = false;
  std::string output = "-";
  std::string labels;
};

void add_common(CLI::App* cmd, CliOptions& o) {
  cmd->add_option("--measure", o.measure, "baseline | credal-entropy | credal-gh")
      ->check(CLI::IsMember({"baseline", "credal-entropy", "credal-gh"}));
  cmd->add_option("--uncertainty", o.uncertainty, "tu | au | eu")
      ->check(CLI::IsMember({"tu", "au", "eu"}));
  cmd->add_option("--pia-j", o.pia_j, "reduce to J pseudo-classes before the credal measures (J >= 2)");
  cmd->add_flag("--pia-as-printed", o.pia_as_printed,
                "merge against the kept classes' bound sums instead (not guaranteed valid)");
  cmd->add_option("--ece-bins", o.ece_bins, "number of equal-width confidence bins");
  cmd->add_option("--format", o.format, "report format: json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--seed", o.seed, "seed for the randomized lower-entropy orderings");
  cmd->add_option("--exact-threshold", o.exact_threshold,
                  "largest class count solved by exact vertex enumeration");
  cmd->add_option("--random-orders", o.random_orders, "random greedy orderings above the threshold");
  cmd->add_option("--tolerance", o.tolerance, "simplex tolerance for ingested rows");
  cmd->add_option("--threads", o.threads, "worker threads (output order is input order)");
  cmd->add_flag("--gh", o.gh, "also report the generalized Hartley measure");
  cmd->add_option("-o,--output", o.output, "report path, '-' for stdout");
}

credal::RunConfig to_config(const CliOptions& o) {
  credal::RunConfig c;
  c.measure = credal::parse_measure(o.measure);
  c.uncertainty = credal::parse_uncertainty(o.uncertainty);
  if (o.pia_j != 0) c.pia_j = o.pia_j;
  c.merge_rule = o.pia_as_printed ? credal::MergeRule::AsPrinted : credal::MergeRule::Coherent;
  c.ece_bins = o.ece_bins;
  c.format = credal::parse_format(o.format);
  c.seed = o.seed;
  c.exact_threshold = o.exact_threshold;
  c.random_orders = o.random_orders;
  c.ingest_tolerance = o.tolerance;
  c.threads = o.threads;
  c.with_gh = o.gh;
  c.check();
  return c;
}

credal::LabeledBatch load(const std::string& path, double tolerance) {
  auto file = credal::io::read_predictions(path, tolerance);
  file.batch.check();
  return std::move(file.batch);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"credal: credal-set uncertainty quantification for sampled predictions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(credal::report::kToolVersion));

  CliOptions uq_opts, ood_opts, cal_opts;
  std::string uq_input, ood_id_input, ood_ood_input, cal_input;

  auto* uq = app.add_subcommand("uq", "per-instance baseline and credal uncertainty");
  uq->add_option("input", uq_input, "prediction file (.npy, .jsonl, .csv)")->required();
  add_common(uq, uq_opts);

  auto* ood = app.add_subcommand("ood", "OOD detection AUROC/AUPRC from two prediction files");
  ood->add_option("id_input", ood_id_input, "in-distribution predictions")->required();
  ood->add_option("ood_input", ood_ood_input, "out-of-distribution predictions")->required();
  add_common(ood, ood_opts);

  auto* cal = app.add_subcommand("calibrate", "ACC/ECE/NLL of averaged vs intersection probability");
  cal->add_option("input", cal_input, "labelled prediction file")->required();
  cal->add_option("--labels", cal_opts.labels, "1-D integer .npy of labels (for .npy inputs)");
  add_common(cal, cal_opts);

  credal::SynthConfig synth_cfg;
  std::string id_out, ood_out;
  auto* synth = app.add_subcommand("synth", "write synthetic ID/OOD prediction files");
  synth->add_option("--id-out", id_out, "ID output (.jsonl or .npy)")->required();
  synth->add_option("--ood-out", ood_out, "OOD output (.jsonl or .npy)")->required();
  synth->add_option("--n-id", synth_cfg.n_id, "ID instances");
  synth->add_option("--n-ood", synth_cfg.n_ood, "OOD instances");
  synth->add_option("--samples", synth_cfg.samples, "samples per instance (N)");
  synth->add_option("--classes", synth_cfg.classes, "classes (C)");
  synth->add_option("--id-sharpness", synth_cfg.id_sharpness, "reference mass on the ID class");
  synth->add_option("--id-concentration", synth_cfg.id_concentration, "ID Dirichlet concentration");
  synth->add_option("--ood-concentration", synth_cfg.ood_concentration, "OOD Dirichlet concentration");
  synth->add_option("--seed", synth_cfg.seed, "generator seed");

  auto* isa = app.add_subcommand("isa", "print the SIMD kernel variant in use");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*uq) {
      const auto config = to_config(uq_opts);
      const auto batch = load(uq_input, config.ingest_tolerance);
      const auto results = credal::analyze_batch(batch, config);
      credal::report::write_report(credal::report::uq_report(results, config, {uq_input}),
                                   uq_opts.output);
    } else if (*ood) {
      const auto config = to_config(ood_opts);
      const auto id_batch = load(ood_id_input, config.ingest_tolerance);
      const auto ood_batch = load(ood_ood_input, config.ingest_tolerance);
      const auto result = credal::evaluate_ood(id_batch, ood_batch, config);
      credal::report::write_report(
          credal::report::ood_report(result, config, {ood_id_input, ood_ood_input}),
          ood_opts.output);
    } else if (*cal) {
      const auto config = to_config(cal_opts);
      auto batch = load(cal_input, config.ingest_tolerance);
      std::vector<std::string> inputs{cal_input};
      if (!cal_opts.labels.empty()) {
        batch.labels = credal::io::read_npy_labels(cal_opts.labels);
        batch.check();
        inputs.push_back(cal_opts.labels);
      }
      const auto result = credal::evaluate_calibration(batch, config);
      credal::report::write_report(credal::report::calibration_report(result, config, inputs),
                                   cal_opts.output);
    } else if (*synth) {
      const auto data = credal::synthesize(synth_cfg);
      auto write = [&](const std::string& path, const credal::LabeledBatch& batch,
                       const std::string& role) {
        const std::string meta = synth_cfg.metadata_json(role);
        if (std::filesystem::path(path).extension() == ".npy") {
          std::vector<double> flat;
          for (const auto& inst : batch.instances) {
            flat.insert(flat.end(), inst.flat().begin(), inst.flat().end());
          }
          const std::size_t shape[] = {batch.size(), synth_cfg.samples, synth_cfg.classes};
          credal::io::write_npy(path, flat, shape);
          credal::io::write_text(path + ".meta.json", meta + "\n");
          if (batch.labels) credal::io::write_npy_labels(path + ".labels.npy", *batch.labels);
        } else {
          credal::io::write_jsonl(path, batch, meta);
        }
      };
      write(id_out, data.id, "id");
      write(ood_out, data.ood, "ood");
    } else if (*isa) {
      std::cout << credal::kernels::to_string(credal::kernels::active_isa()) << "\n";
    }
  } catch (const credal::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}
