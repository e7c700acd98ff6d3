#pragma once

// Synthetic prediction dumps standing in for trained-model outputs.
//
// In-distribution instances pick a reference class y, build a sharp reference
// point (mass `id_sharpness` on y, the rest spread evenly) and draw N samples
// from Dirichlet(id_concentration * reference): members agree closely.
// The label is drawn from the reference point, so the averaged prediction is
// roughly calibrated.
// OOD instances draw a reference point from a flat Dirichlet and then N
// samples from Dirichlet(ood_concentration * reference): members disagree.

#include <cstddef>
#include <cstdint>
#include <string>

#include "credal/types.hpp"

namespace credal {

struct SynthConfig {
  std::size_t n_id = 500;
  std::size_t n_ood = 500;
  std::size_t samples = 5;
  std::size_t classes = 10;
  double id_sharpness = 0.9;
  double id_concentration = 200.0;
  double ood_concentration = 3.0;
  std::uint64_t seed = 0;

  void check() const;
  /// JSON object echoing every generator parameter.
  std::string metadata_json(const std::string& role) const;
};

struct SynthData {
  LabeledBatch id;   // labelled
  LabeledBatch ood;  // unlabelled
};

SynthData synthesize(const SynthConfig& config);

}  // namespace credal
