#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "fpnn/dataset.hpp"
#include "fpnn/rbf_network.hpp"

namespace fpnn {

/// Everything needed to reproduce predictions: trained parameters, the
/// normalization fitted on the training data, the decision threshold, and
/// the run that produced them.
struct Model {
  NetworkParams params;
  data::NormalizationStats norm;
  double threshold = kDefaultThreshold;
  std::uint64_t seed = 0;
  std::string mode = "ga_sa";

  friend bool operator==(const Model&, const Model&) = default;
};

/// JSON model file with fields `shape` {n, m, S}, `centers`, `sigmas`,
/// `weights`, `norm` {min, max}, `threshold`, `seed` (plus `mode`).
/// Numbers are serialized with full round-trip precision, so saving and
/// reloading reproduces parameters bit for bit.
void save_model(const std::filesystem::path& path, const Model& model);
Model load_model(const std::filesystem::path& path);

}  // namespace fpnn
