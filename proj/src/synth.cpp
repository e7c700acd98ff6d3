#include "credal/synth.hpp"

#include <algorithm>
#include <random>

#include "json.hpp"

namespace credal {

namespace {

std::vector<double> dirichlet(std::mt19937_64& rng, std::span<const double> alpha) {
  std::vector<double> out(alpha.size());
  for (;;) {
    double sum = 0.0;
    for (std::size_t k = 0; k < alpha.size(); ++k) {
      std::gamma_distribution<double> gamma(alpha[k], 1.0);
      out[k] = gamma(rng);
      sum += out[k];
    }
    if (sum > 0.0) {
      for (auto& v : out) v /= sum;
      return out;
    }
  }
}

std::size_t draw_class(std::mt19937_64& rng, std::span<const double> p) {
  std::discrete_distribution<std::size_t> dist(p.begin(), p.end());
  return dist(rng);
}

PredictionSet draw_set(std::mt19937_64& rng, std::span<const double> reference,
                       double concentration, std::size_t samples) {
  std::vector<double> alpha(reference.size());
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    alpha[k] = std::max(concentration * reference[k], 1e-3);
  }
  std::vector<double> flat;
  flat.reserve(samples * reference.size());
  for (std::size_t n = 0; n < samples; ++n) {
    const auto row = dirichlet(rng, alpha);
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return PredictionSet::from_flat(flat, samples, reference.size());
}

}  // namespace

void SynthConfig::check() const {
  detail::require(classes >= 2, ErrorCode::InvalidArgument, "synth needs at least 2 classes");
  detail::require(samples >= 1, ErrorCode::InvalidArgument, "synth needs at least 1 sample");
  detail::require(n_id >= 1 && n_ood >= 1, ErrorCode::InvalidArgument,
                  "synth needs at least one ID and one OOD instance");
  detail::require(id_sharpness > 0.0 && id_sharpness < 1.0, ErrorCode::InvalidArgument,
                  "id sharpness must lie in (0, 1)");
  detail::require(id_concentration > 0.0 && ood_concentration > 0.0, ErrorCode::InvalidArgument,
                  "concentrations must be positive");
}

std::string SynthConfig::metadata_json(const std::string& role) const {
  nlohmann::ordered_json j;
  j["generator"] = "credal-synth";
  j["role"] = role;
  j["seed"] = seed;
  j["n_id"] = n_id;
  j["n_ood"] = n_ood;
  j["samples"] = samples;
  j["classes"] = classes;
  j["id_sharpness"] = id_sharpness;
  j["id_concentration"] = id_concentration;
  j["ood_concentration"] = ood_concentration;
  return j.dump();
}

SynthData synthesize(const SynthConfig& config) {
  config.check();
  std::mt19937_64 rng(config.seed);
  const std::size_t c = config.classes;
  SynthData out;

  std::vector<std::size_t> labels;
  labels.reserve(config.n_id);
  for (std::size_t i = 0; i < config.n_id; ++i) {
    const std::size_t y = std::uniform_int_distribution<std::size_t>(0, c - 1)(rng);
    std::vector<double> reference(c, (1.0 - config.id_sharpness) / static_cast<double>(c - 1));
    reference[y] = config.id_sharpness;
    out.id.instances.push_back(draw_set(rng, reference, config.id_concentration, config.samples));
    out.id.ids.push_back("id-" + std::to_string(i));
    labels.push_back(draw_class(rng, reference));
  }
  out.id.labels = std::move(labels);

  const std::vector<double> flat_prior(c, 1.0);
  for (std::size_t i = 0; i < config.n_ood; ++i) {
    const auto reference = dirichlet(rng, flat_prior);
    out.ood.instances.push_back(draw_set(rng, reference, config.ood_concentration, config.samples));
    out.ood.ids.push_back("ood-" + std::to_string(i));
  }
  return out;
}

}  // namespace credal
