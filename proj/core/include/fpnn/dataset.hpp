#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "fpnn/ga_sa.hpp"
#include "fpnn/rbf_network.hpp"
#include "fpnn/rng.hpp"

namespace fpnn::data {

/// Parsed CSV contents: feature rows plus a binary label column.
struct RawTable {
  std::vector<std::string> columns;       // feature names then label name
  std::vector<std::vector<double>> rows;  // feature values, rectangular
  std::vector<int> labels;                // 0/1, one per row

  std::size_t feature_count() const { return columns.size() - 1; }
};

/// Loads a CSV file: header row, numeric feature columns, final {0,1}
/// label column. Malformed input raises ValidationError naming the line.
RawTable load_csv(const std::filesystem::path& path);

/// Each row becomes one sample whose input has a single component holding
/// the row's feature values in column order.
std::vector<LabeledSample> to_samples(const RawTable& table);

/// Per-position min/max, fitted on training data only.
struct NormalizationStats {
  std::vector<std::vector<double>> min;  // [component][sample point]
  std::vector<std::vector<double>> max;

  std::size_t component_count() const { return min.size(); }
  std::size_t length() const { return min.empty() ? 0 : min.front().size(); }

  friend bool operator==(const NormalizationStats&,
                         const NormalizationStats&) = default;
};

NormalizationStats fit_normalization(const std::vector<LabeledSample>& train);

/// Maps v to (v - min) / (max - min) per position; a degenerate position
/// (min == max) maps to the constant 0.5. Values outside the fitted range
/// are not clipped.
FunctionVectorSample apply_normalization(const NormalizationStats& stats,
                                         const FunctionVectorSample& x);
std::vector<LabeledSample> apply_normalization(
    const NormalizationStats& stats, const std::vector<LabeledSample>& samples);

/// Class-balanced split sizes and the seed that drives the draw.
struct SplitSpec {
  std::size_t train_per_class = 30;
  std::size_t test_per_class = 30;
  std::uint64_t seed = 0;
};

/// Seeded sampling without replacement: per class, train_per_class samples
/// into train, then test_per_class of the remainder into test. Reports any
/// per-class shortfall.
std::pair<std::vector<LabeledSample>, std::vector<LabeledSample>>
stratified_split(const std::vector<LabeledSample>& samples,
                 const SplitSpec& spec, Rng& rng);

/// Two-class benchmark data: class 0 follows sin(2*pi*s/(S-1)), class 1 a
/// linear ramp s/(S-1), each plus independent Gaussian noise.
std::vector<LabeledSample> synth_generate(std::size_t per_class,
                                          std::size_t length, double noise_sd,
                                          Rng& rng);

/// Heuristics that size the feasible search region from training data.
struct BoundsConfig {
  double sigma_min = kDefaultSigmaMin;
  double weight_limit = 2.0;          // weight genes in [-limit, +limit]
  std::size_t distance_subsample = 50;  // pairwise-distance sample cap
  std::uint64_t subsample_seed = 0;
};

/// Gene bounds for a network of the given shape: center genes bounded by
/// the observed per-component value range, widths by [sigma_min, max
/// pairwise generalized Fréchet distance over a seeded subsample], weights
/// by the configured limit.
ga::GeneBounds derive_gene_bounds(const std::vector<LabeledSample>& train,
                                  const NetworkShape& shape,
                                  const BoundsConfig& config);

/// Writes single-component samples in the ingestion CSV format with full
/// round-trip precision. Identical samples produce identical bytes.
void write_csv(const std::filesystem::path& path,
               const std::vector<LabeledSample>& samples);

}  // namespace fpnn::data
