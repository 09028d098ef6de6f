#include "fpnn/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "fpnn/errors.hpp"
#include "fpnn/frechet.hpp"
#include "text_util.hpp"

namespace fpnn::data {

namespace {

bool is_blank(std::string_view line) { return detail::trim(line).empty(); }

}  // namespace

RawTable load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open dataset file: " + path.string());
  }

  RawTable table;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!is_blank(line)) break;
  }
  if (line_no == 0 || is_blank(line)) {
    throw ValidationError("dataset file is empty: " + path.string());
  }
  for (std::string_view name : detail::split_fields(line)) {
    table.columns.emplace_back(name);
  }
  if (table.columns.size() < 2) {
    throw ValidationError(
        "header must declare at least one feature column and a label column");
  }
  const std::size_t ncols = table.columns.size();

  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    const auto fields = detail::split_fields(line);
    if (fields.size() != ncols) {
      throw ValidationError("line " + std::to_string(line_no) + ": expected " +
                            std::to_string(ncols) + " columns, found " +
                            std::to_string(fields.size()));
    }
    std::vector<double> row(ncols - 1);
    for (std::size_t i = 0; i + 1 < ncols; ++i) {
      const auto value = detail::parse_double(fields[i]);
      if (!value || !std::isfinite(*value)) {
        throw ValidationError("line " + std::to_string(line_no) +
                              ": non-numeric value '" +
                              std::string(fields[i]) + "' in column " +
                              table.columns[i]);
      }
      row[i] = *value;
    }
    const auto label = detail::parse_double(fields[ncols - 1]);
    if (!label || (*label != 0.0 && *label != 1.0)) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": label must be 0 or 1, found '" +
                            std::string(fields[ncols - 1]) + "'");
    }
    table.rows.push_back(std::move(row));
    table.labels.push_back(static_cast<int>(*label));
  }
  return table;
}

std::vector<LabeledSample> to_samples(const RawTable& table) {
  std::vector<LabeledSample> samples;
  samples.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    samples.push_back(LabeledSample{
        FunctionVectorSample{Sequence(table.rows[r])},
        static_cast<double>(table.labels[r])});
  }
  return samples;
}

NormalizationStats fit_normalization(const std::vector<LabeledSample>& train) {
  if (train.empty()) {
    throw ValidationError("cannot fit normalization on an empty training set");
  }
  const std::size_t n = train.front().input.component_count();
  const std::size_t s = train.front().input.length();
  for (const auto& sample : train) {
    if (sample.input.component_count() != n || sample.input.length() != s) {
      throw ValidationError("training samples disagree on shape");
    }
  }
  NormalizationStats stats;
  stats.min.assign(n, std::vector<double>(s, std::numeric_limits<double>::infinity()));
  stats.max.assign(n, std::vector<double>(s, -std::numeric_limits<double>::infinity()));
  for (const auto& sample : train) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto& values = sample.input.component(i).values();
      for (std::size_t k = 0; k < s; ++k) {
        stats.min[i][k] = std::min(stats.min[i][k], values[k]);
        stats.max[i][k] = std::max(stats.max[i][k], values[k]);
      }
    }
  }
  return stats;
}

FunctionVectorSample apply_normalization(const NormalizationStats& stats,
                                         const FunctionVectorSample& x) {
  if (x.component_count() != stats.component_count() ||
      x.length() != stats.length()) {
    throw ValidationError("sample shape does not match normalization stats");
  }
  std::vector<Sequence> components;
  components.reserve(x.component_count());
  for (std::size_t i = 0; i < x.component_count(); ++i) {
    const auto& values = x.component(i).values();
    std::vector<double> scaled(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
      const double lo = stats.min[i][k];
      const double hi = stats.max[i][k];
      scaled[k] = (hi == lo) ? 0.5 : (values[k] - lo) / (hi - lo);
    }
    components.emplace_back(std::move(scaled));
  }
  return FunctionVectorSample(std::move(components));
}

std::vector<LabeledSample> apply_normalization(
    const NormalizationStats& stats,
    const std::vector<LabeledSample>& samples) {
  std::vector<LabeledSample> out;
  out.reserve(samples.size());
  for (const auto& sample : samples) {
    out.push_back(
        LabeledSample{apply_normalization(stats, sample.input), sample.target});
  }
  return out;
}

std::pair<std::vector<LabeledSample>, std::vector<LabeledSample>>
stratified_split(const std::vector<LabeledSample>& samples,
                 const SplitSpec& spec, Rng& rng) {
  std::vector<std::size_t> by_class[2];
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double t = samples[i].target;
    if (t != 0.0 && t != 1.0) {
      throw ValidationError("stratified split requires {0,1} targets");
    }
    by_class[t == 1.0 ? 1 : 0].push_back(i);
  }
  const std::size_t need = spec.train_per_class + spec.test_per_class;
  for (int c = 0; c < 2; ++c) {
    if (by_class[c].size() < need) {
      throw ValidationError(
          "class " + std::to_string(c) + " has " +
          std::to_string(by_class[c].size()) + " samples, need " +
          std::to_string(need) + " (" + std::to_string(spec.train_per_class) +
          " train + " + std::to_string(spec.test_per_class) + " test)");
    }
  }

  std::vector<LabeledSample> train;
  std::vector<LabeledSample> test;
  train.reserve(2 * spec.train_per_class);
  test.reserve(2 * spec.test_per_class);
  for (int c = 0; c < 2; ++c) {
    rng.shuffle(by_class[c]);
    for (std::size_t k = 0; k < spec.train_per_class; ++k) {
      train.push_back(samples[by_class[c][k]]);
    }
    for (std::size_t k = 0; k < spec.test_per_class; ++k) {
      test.push_back(samples[by_class[c][spec.train_per_class + k]]);
    }
  }
  return {std::move(train), std::move(test)};
}

std::vector<LabeledSample> synth_generate(std::size_t per_class,
                                          std::size_t length, double noise_sd,
                                          Rng& rng) {
  if (per_class < 1) {
    throw ValidationError("need at least one sample per class");
  }
  if (length < 2) {
    throw ValidationError("synthetic sequences need length >= 2");
  }
  if (!(noise_sd >= 0.0)) {
    throw ValidationError("noise standard deviation must be non-negative");
  }
  std::vector<LabeledSample> samples;
  samples.reserve(2 * per_class);
  for (int label = 0; label < 2; ++label) {
    for (std::size_t r = 0; r < per_class; ++r) {
      std::vector<double> values(length);
      for (std::size_t s = 0; s < length; ++s) {
        const double u = static_cast<double>(s) / static_cast<double>(length - 1);
        const double base =
            label == 0 ? std::sin(2.0 * std::numbers::pi * u) : u;
        values[s] = base + noise_sd * rng.gaussian();
      }
      samples.push_back(LabeledSample{
          FunctionVectorSample{Sequence(std::move(values))},
          static_cast<double>(label)});
    }
  }
  return samples;
}

ga::GeneBounds derive_gene_bounds(const std::vector<LabeledSample>& train,
                                  const NetworkShape& shape,
                                  const BoundsConfig& config) {
  if (train.empty()) {
    throw ValidationError("cannot derive gene bounds from an empty training set");
  }
  shape.validate();
  if (!(config.sigma_min > 0.0)) {
    throw ValidationError("sigma floor must be positive");
  }
  if (!(config.weight_limit > 0.0)) {
    throw ValidationError("weight limit must be positive");
  }
  for (const auto& sample : train) {
    if (sample.input.component_count() != shape.components) {
      throw ValidationError("sample component count does not match network");
    }
  }

  // Center genes range over the observed value range of their component.
  std::vector<double> lo(shape.components,
                         std::numeric_limits<double>::infinity());
  std::vector<double> hi(shape.components,
                         -std::numeric_limits<double>::infinity());
  for (const auto& sample : train) {
    for (std::size_t i = 0; i < shape.components; ++i) {
      for (double v : sample.input.component(i).values()) {
        lo[i] = std::min(lo[i], v);
        hi[i] = std::max(hi[i], v);
      }
    }
  }
  for (std::size_t i = 0; i < shape.components; ++i) {
    if (!(lo[i] < hi[i])) {
      lo[i] -= 0.5;  // constant component; give the search some room
      hi[i] += 0.5;
    }
  }

  // Width genes range up to the largest pairwise distance over a seeded
  // subsample; that is the scale beyond which the kernel stops resolving.
  std::vector<std::size_t> pick(train.size());
  std::iota(pick.begin(), pick.end(), 0);
  if (pick.size() > config.distance_subsample) {
    Rng rng(config.subsample_seed);
    rng.shuffle(pick);
    pick.resize(config.distance_subsample);
  }
  double d_max = 0.0;
  for (std::size_t a = 0; a < pick.size(); ++a) {
    for (std::size_t b = a + 1; b < pick.size(); ++b) {
      d_max = std::max(d_max, generalized_frechet(train[pick[a]].input,
                                                  train[pick[b]].input));
    }
  }
  const double sigma_hi =
      d_max > config.sigma_min ? d_max : config.sigma_min + 1.0;

  std::vector<std::pair<double, double>> bounds;
  bounds.reserve(shape.gene_count());
  for (std::size_t j = 0; j < shape.hidden; ++j) {
    for (std::size_t i = 0; i < shape.components; ++i) {
      for (std::size_t s = 0; s < shape.length; ++s) {
        bounds.emplace_back(lo[i], hi[i]);
      }
    }
  }
  for (std::size_t j = 0; j < shape.hidden; ++j) {
    bounds.emplace_back(config.sigma_min, sigma_hi);
  }
  for (std::size_t j = 0; j < shape.hidden; ++j) {
    bounds.emplace_back(-config.weight_limit, config.weight_limit);
  }
  return ga::GeneBounds(std::move(bounds));
}

void write_csv(const std::filesystem::path& path,
               const std::vector<LabeledSample>& samples) {
  if (samples.empty()) {
    throw ValidationError("refusing to write an empty dataset");
  }
  const std::size_t length = samples.front().input.length();
  for (const auto& sample : samples) {
    if (sample.input.component_count() != 1) {
      throw ValidationError("CSV export supports single-component samples only");
    }
    if (sample.input.length() != length) {
      throw ValidationError("CSV export requires a common sample length");
    }
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ValidationError("cannot write dataset file: " + path.string());
  }

  std::ostringstream body;
  for (std::size_t s = 0; s < length; ++s) {
    body << 'x' << (s + 1) << ',';
  }
  body << "label\n";
  for (const auto& sample : samples) {
    for (double v : sample.input.component(0).values()) {
      body << detail::format_double(v) << ',';
    }
    body << (sample.target == 1.0 ? '1' : '0') << '\n';
  }
  out << body.str();
  if (!out) {
    throw ValidationError("failed while writing " + path.string());
  }
}

}  // namespace fpnn::data
