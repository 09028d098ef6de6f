// Command line surface: distance, synth, train, evaluate, report.
//
// Exit codes: 0 success, 2 usage/validation failures, 3 runtime or
// numerical failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fpnn/dataset.hpp"
#include "fpnn/errors.hpp"
#include "fpnn/frechet.hpp"
#include "fpnn/ga_sa.hpp"
#include "fpnn/model_io.hpp"
#include "fpnn/rbf_network.hpp"
#include "fpnn/trace_io.hpp"

namespace fs = std::filesystem;
namespace ga = fpnn::ga;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

// ---------------------------------------------------------------------------
// Run configuration (train command)

struct SynthSpec {
  std::size_t per_class = 30;
  std::size_t length = 14;
  double noise_sd = 0.05;
  std::uint64_t seed = 0;
};

struct RunConfig {
  ga::TrainerConfig trainer;
  bool sigma_min_auto = true;

  std::optional<std::string> csv;
  std::optional<SynthSpec> synth;
  fpnn::data::SplitSpec split;

  std::size_t hidden = 8;
  std::optional<std::size_t> components;  // validated against the data
  std::optional<std::size_t> length;

  fpnn::data::BoundsConfig bounds;

  std::string mode = "ga_sa";
  std::string model_out = "model.json";
  std::string trace_out = "trace.csv";
};

void reject_unknown_keys(const json& j, std::initializer_list<const char*> known,
                         const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool ok = false;
    for (const char* k : known) {
      if (key == k) { ok = true; break; }
    }
    if (!ok) {
      throw fpnn::ValidationError("unknown config key '" + key + "' in " +
                                  where);
    }
  }
}

ga::TrainMode parse_mode(const std::string& mode) {
  if (mode == "ga_sa") return ga::TrainMode::kGaSa;
  if (mode == "ga_only") return ga::TrainMode::kGaOnly;
  throw fpnn::ValidationError("mode must be 'ga_sa' or 'ga_only', got '" +
                              mode + "'");
}

RunConfig load_run_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw fpnn::ValidationError("cannot open config file: " + path.string());
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw fpnn::ValidationError("malformed config file " + path.string() +
                                ": " + e.what());
  }

  RunConfig cfg;
  try {
    reject_unknown_keys(j, {"mode", "data", "network", "trainer", "bounds",
                            "model_out", "trace_out"},
                        "top level");
    if (j.contains("mode")) cfg.mode = j["mode"].get<std::string>();
    parse_mode(cfg.mode);  // validate early
    if (j.contains("model_out")) cfg.model_out = j["model_out"].get<std::string>();
    if (j.contains("trace_out")) cfg.trace_out = j["trace_out"].get<std::string>();

    if (j.contains("data")) {
      const json& d = j["data"];
      reject_unknown_keys(d, {"csv", "synthetic", "split"}, "data");
      if (d.contains("csv")) cfg.csv = d["csv"].get<std::string>();
      if (d.contains("synthetic")) {
        const json& s = d["synthetic"];
        reject_unknown_keys(s, {"per_class", "length", "noise_sd", "seed"},
                            "data.synthetic");
        SynthSpec spec;
        if (s.contains("per_class")) spec.per_class = s["per_class"].get<std::size_t>();
        if (s.contains("length")) spec.length = s["length"].get<std::size_t>();
        if (s.contains("noise_sd")) spec.noise_sd = s["noise_sd"].get<double>();
        if (s.contains("seed")) spec.seed = s["seed"].get<std::uint64_t>();
        cfg.synth = spec;
      }
      if (d.contains("split")) {
        const json& s = d["split"];
        reject_unknown_keys(s, {"train_per_class", "test_per_class", "seed"},
                            "data.split");
        if (s.contains("train_per_class"))
          cfg.split.train_per_class = s["train_per_class"].get<std::size_t>();
        if (s.contains("test_per_class"))
          cfg.split.test_per_class = s["test_per_class"].get<std::size_t>();
        if (s.contains("seed")) cfg.split.seed = s["seed"].get<std::uint64_t>();
      }
    }

    if (j.contains("network")) {
      const json& n = j["network"];
      reject_unknown_keys(n, {"hidden", "components", "length"}, "network");
      if (n.contains("hidden")) cfg.hidden = n["hidden"].get<std::size_t>();
      if (n.contains("components"))
        cfg.components = n["components"].get<std::size_t>();
      if (n.contains("length")) cfg.length = n["length"].get<std::size_t>();
    }

    if (j.contains("trainer")) {
      const json& t = j["trainer"];
      reject_unknown_keys(
          t,
          {"population", "max_generations", "target_error", "crossover_prob",
           "mutation_prob", "crossover_mix", "initial_temperature",
           "annealing_rate", "sa_perturbation", "seed", "sigma_min",
           "threshold", "eval_threads"},
          "trainer");
      ga::TrainerConfig& tc = cfg.trainer;
      if (t.contains("population")) tc.population_size = t["population"].get<std::size_t>();
      if (t.contains("max_generations"))
        tc.max_generations = t["max_generations"].get<std::size_t>();
      if (t.contains("target_error")) tc.target_error = t["target_error"].get<double>();
      if (t.contains("crossover_prob")) tc.crossover_prob = t["crossover_prob"].get<double>();
      if (t.contains("mutation_prob")) tc.mutation_prob = t["mutation_prob"].get<double>();
      if (t.contains("crossover_mix")) {
        const json& v = t["crossover_mix"];
        if (v.is_string()) {
          if (v.get<std::string>() != "per-pair") {
            throw fpnn::ValidationError(
                "trainer.crossover_mix must be a number in (0,1) or \"per-pair\"");
          }
        } else {
          tc.crossover_mix = v.get<double>();
        }
      }
      if (t.contains("initial_temperature")) {
        const json& v = t["initial_temperature"];
        if (v.is_string()) {
          if (v.get<std::string>() != "adaptive") {
            throw fpnn::ValidationError(
                "trainer.initial_temperature must be a positive number or \"adaptive\"");
          }
        } else {
          tc.initial_temperature = v.get<double>();
        }
      }
      if (t.contains("annealing_rate")) tc.annealing_rate = t["annealing_rate"].get<double>();
      if (t.contains("sa_perturbation")) {
        const std::string p = t["sa_perturbation"].get<std::string>();
        if (p == "all-genes") {
          tc.sa_perturbation = ga::SaPerturbation::kAllGenes;
        } else if (p == "one-gene") {
          tc.sa_perturbation = ga::SaPerturbation::kOneGene;
        } else {
          throw fpnn::ValidationError(
              "trainer.sa_perturbation must be 'all-genes' or 'one-gene'");
        }
      }
      if (t.contains("seed")) tc.seed = t["seed"].get<std::uint64_t>();
      if (t.contains("sigma_min")) {
        const json& v = t["sigma_min"];
        if (v.is_string()) {
          if (v.get<std::string>() != "auto") {
            throw fpnn::ValidationError(
                "trainer.sigma_min must be a positive number or \"auto\"");
          }
        } else {
          cfg.trainer.sigma_min = v.get<double>();
          cfg.sigma_min_auto = false;
        }
      }
      if (t.contains("threshold")) tc.threshold = t["threshold"].get<double>();
      if (t.contains("eval_threads")) tc.eval_threads = t["eval_threads"].get<unsigned>();
    }

    if (j.contains("bounds")) {
      const json& b = j["bounds"];
      reject_unknown_keys(b, {"weight_limit", "distance_subsample", "subsample_seed"},
                          "bounds");
      if (b.contains("weight_limit"))
        cfg.bounds.weight_limit = b["weight_limit"].get<double>();
      if (b.contains("distance_subsample"))
        cfg.bounds.distance_subsample = b["distance_subsample"].get<std::size_t>();
      if (b.contains("subsample_seed"))
        cfg.bounds.subsample_seed = b["subsample_seed"].get<std::uint64_t>();
    }
  } catch (const json::exception& e) {
    throw fpnn::ValidationError("malformed config file " + path.string() +
                                ": " + e.what());
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// Shared helpers

fs::path with_tag(const fs::path& path, const std::string& tag) {
  fs::path out = path;
  const std::string stem = out.stem().string();
  const std::string ext = out.extension().string();
  out.replace_filename(stem + tag + ext);
  return out;
}

fpnn::FunctionVectorSample read_sequence_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw fpnn::ValidationError("cannot open sequence file: " + path.string());
  }
  std::vector<fpnn::Sequence> components;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view trimmed = line;
    while (!trimmed.empty() && (trimmed.back() == '\r' || trimmed.back() == ' '))
      trimmed.remove_suffix(1);
    if (trimmed.empty()) continue;
    std::vector<double> values;
    std::size_t start = 0;
    const std::string text(trimmed);
    while (start <= text.size()) {
      const std::size_t pos = text.find(',', start);
      const std::string cell =
          text.substr(start, pos == std::string::npos ? std::string::npos
                                                      : pos - start);
      try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        while (used < cell.size() && (cell[used] == ' ' || cell[used] == '\t'))
          ++used;
        if (used != cell.size() || !std::isfinite(v)) throw std::invalid_argument(cell);
        values.push_back(v);
      } catch (const std::exception&) {
        throw fpnn::ValidationError(path.string() + ": line " +
                                    std::to_string(line_no) +
                                    ": non-numeric value '" + cell + "'");
      }
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
    components.emplace_back(std::move(values));
  }
  if (components.empty()) {
    throw fpnn::ValidationError("sequence file holds no data: " + path.string());
  }
  return fpnn::FunctionVectorSample(std::move(components));
}

struct EvalReport {
  std::size_t total = 0;
  std::size_t class0 = 0, class1 = 0;
  std::size_t tp = 0, tn = 0, fp = 0, fn = 0;
  double accuracy = 0.0;
  double objective_error = 0.0;
  std::uint64_t seed = 0;
  std::string mode;
};

EvalReport evaluate_samples(const fpnn::Model& model,
                            const std::vector<fpnn::LabeledSample>& normalized) {
  EvalReport report;
  report.total = normalized.size();
  report.seed = model.seed;
  report.mode = model.mode;
  for (const auto& sample : normalized) {
    const double y = fpnn::forward(model.params, sample.input);
    const int predicted = fpnn::classify(y, model.threshold);
    const int actual = sample.target == 1.0 ? 1 : 0;
    if (actual == 1) {
      ++report.class1;
      predicted == 1 ? ++report.tp : ++report.fn;
    } else {
      ++report.class0;
      predicted == 0 ? ++report.tn : ++report.fp;
    }
  }
  report.accuracy =
      static_cast<double>(report.tp + report.tn) /
      static_cast<double>(report.total);
  report.objective_error = fpnn::objective(model.params, normalized);
  return report;
}

void print_report(const EvalReport& r) {
  std::printf("samples: %zu (class0 %zu, class1 %zu)\n", r.total, r.class0,
              r.class1);
  std::printf("accuracy: %.6f\n", r.accuracy);
  std::printf("confusion: TP=%zu TN=%zu FP=%zu FN=%zu\n", r.tp, r.tn, r.fp,
              r.fn);
  std::printf("objective_E: %.9g\n", r.objective_error);
  std::printf("seed: %llu\n", static_cast<unsigned long long>(r.seed));
  std::printf("mode: %s\n", r.mode.c_str());
}

json report_to_json(const EvalReport& r) {
  json j;
  j["accuracy"] = r.accuracy;
  j["counts"] = {{"total", r.total}, {"class0", r.class0}, {"class1", r.class1}};
  j["confusion"] = {{"tp", r.tp}, {"tn", r.tn}, {"fp", r.fp}, {"fn", r.fn}};
  j["objective_E"] = r.objective_error;
  j["seed"] = r.seed;
  j["mode"] = r.mode;
  return j;
}

double global_range(const std::vector<fpnn::LabeledSample>& samples) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& sample : samples) {
    for (const auto& component : sample.input.components()) {
      for (double v : component.values()) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
  }
  return hi - lo;
}

// ---------------------------------------------------------------------------
// Commands

struct DistanceArgs {
  std::string file_a, file_b;
};

int cmd_distance(const DistanceArgs& args) {
  const auto a = read_sequence_file(args.file_a);
  const auto b = read_sequence_file(args.file_b);
  const double d = fpnn::generalized_frechet(a, b);
  std::printf("%.6f\n", d);
  return kExitOk;
}

struct SynthArgs {
  std::size_t per_class = 30;
  std::size_t length = 14;
  double noise_sd = 0.05;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_synth(const SynthArgs& args) {
  fpnn::Rng rng(args.seed);
  const auto samples =
      fpnn::data::synth_generate(args.per_class, args.length, args.noise_sd, rng);
  fpnn::data::write_csv(args.out, samples);
  std::printf("wrote %zu samples (%zu per class, length %zu) to %s\n",
              samples.size(), args.per_class, args.length, args.out.c_str());
  return kExitOk;
}

struct TrainArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  std::optional<std::string> data;
  std::optional<std::string> model_out;
  std::optional<std::string> trace_out;
  std::optional<unsigned> threads;
  std::size_t repeats = 1;
  bool resplit = false;
  std::optional<std::string> save_split;
};

struct RunOutcome {
  double final_error = 0.0;
  std::size_t generations = 0;
  bool reached_target = false;
  std::optional<double> test_accuracy;
};

RunOutcome run_training_once(const RunConfig& cfg, std::uint64_t master_seed,
                             std::uint64_t split_seed,
                             const std::vector<fpnn::LabeledSample>& all,
                             const std::string& tag,
                             const std::optional<std::string>& save_split) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();

  fpnn::data::SplitSpec spec = cfg.split;
  spec.seed = split_seed;
  fpnn::Rng split_rng(split_seed);
  auto [train_raw, test_raw] = fpnn::data::stratified_split(all, spec, split_rng);

  if (save_split) {
    fpnn::data::write_csv(*save_split + tag + "-train.csv", train_raw);
    if (!test_raw.empty()) {
      fpnn::data::write_csv(*save_split + tag + "-test.csv", test_raw);
    }
  }

  const auto norm = fpnn::data::fit_normalization(train_raw);
  const auto train_samples = fpnn::data::apply_normalization(norm, train_raw);
  const auto test_samples = fpnn::data::apply_normalization(norm, test_raw);

  fpnn::NetworkShape shape{train_samples.front().input.component_count(),
                           cfg.hidden, train_samples.front().input.length()};
  if (cfg.components && *cfg.components != shape.components) {
    throw fpnn::ValidationError("config expects " +
                                std::to_string(*cfg.components) +
                                " components, data has " +
                                std::to_string(shape.components));
  }
  if (cfg.length && *cfg.length != shape.length) {
    throw fpnn::ValidationError("config expects length " +
                                std::to_string(*cfg.length) + ", data has " +
                                std::to_string(shape.length));
  }

  ga::TrainerConfig trainer = cfg.trainer;
  trainer.seed = master_seed;
  trainer.mode = parse_mode(cfg.mode);
  if (cfg.sigma_min_auto) {
    const double range = global_range(train_samples);
    trainer.sigma_min = range > 0.0 ? 1e-3 * range : fpnn::kDefaultSigmaMin;
  }
  fpnn::data::BoundsConfig bounds_cfg = cfg.bounds;
  bounds_cfg.sigma_min = trainer.sigma_min;

  const auto bounds =
      fpnn::data::derive_gene_bounds(train_samples, shape, bounds_cfg);
  const auto result = ga::train(shape, train_samples, bounds, trainer);

  fpnn::Model model;
  model.params = result.params;
  model.norm = norm;
  model.threshold = trainer.threshold;
  model.seed = master_seed;
  model.mode = cfg.mode;
  fpnn::save_model(with_tag(cfg.model_out, tag), model);
  ga::write_trace_csv(with_tag(cfg.trace_out, tag), result.trace);

  RunOutcome outcome;
  outcome.final_error = result.best.error;
  outcome.generations = result.generations;
  outcome.reached_target = result.reached_target;
  if (!test_samples.empty()) {
    outcome.test_accuracy = evaluate_samples(model, test_samples).accuracy;
  }

  const double elapsed =
      std::chrono::duration<double>(clock::now() - t0).count();
  std::printf(
      "seed=%llu generations=%zu final_E=%.9g %s%s wall=%.2fs\n",
      static_cast<unsigned long long>(master_seed), outcome.generations,
      outcome.final_error,
      outcome.reached_target ? "(target reached)" : "(generation cap)",
      outcome.test_accuracy
          ? (" test_accuracy=" + std::to_string(*outcome.test_accuracy)).c_str()
          : "",
      elapsed);
  return outcome;
}

int cmd_train(const TrainArgs& args) {
  RunConfig cfg = load_run_config(args.config_path);
  if (args.mode) cfg.mode = *args.mode;
  parse_mode(cfg.mode);
  if (args.seed) cfg.trainer.seed = *args.seed;
  if (args.data) cfg.csv = *args.data;
  if (args.model_out) cfg.model_out = *args.model_out;
  if (args.trace_out) cfg.trace_out = *args.trace_out;
  if (args.threads) cfg.trainer.eval_threads = *args.threads;
  if (args.repeats < 1) {
    throw fpnn::ValidationError("--repeats must be at least 1");
  }
  cfg.trainer.validate();

  if (cfg.csv && cfg.synth) {
    throw fpnn::ValidationError(
        "config must name either data.csv or data.synthetic, not both");
  }
  std::vector<fpnn::LabeledSample> all;
  if (cfg.csv) {
    all = fpnn::data::to_samples(fpnn::data::load_csv(*cfg.csv));
  } else if (cfg.synth) {
    fpnn::Rng rng(cfg.synth->seed);
    all = fpnn::data::synth_generate(cfg.synth->per_class, cfg.synth->length,
                                     cfg.synth->noise_sd, rng);
  } else {
    throw fpnn::ValidationError(
        "config must provide data.csv or data.synthetic");
  }

  std::vector<RunOutcome> outcomes;
  for (std::size_t r = 0; r < args.repeats; ++r) {
    const std::uint64_t master_seed = cfg.trainer.seed + r;
    const std::uint64_t split_seed =
        args.resplit ? cfg.split.seed + r : cfg.split.seed;
    const std::string tag =
        args.repeats > 1 ? ".seed" + std::to_string(master_seed) : "";
    outcomes.push_back(run_training_once(cfg, master_seed, split_seed, all,
                                         tag, args.save_split));
  }

  if (outcomes.size() > 1) {
    auto mean_sd = [](const std::vector<double>& xs) {
      double mean = 0.0;
      for (double x : xs) mean += x;
      mean /= static_cast<double>(xs.size());
      double var = 0.0;
      for (double x : xs) var += (x - mean) * (x - mean);
      var /= static_cast<double>(xs.size());
      return std::pair<double, double>(mean, std::sqrt(var));
    };
    std::vector<double> errors;
    std::vector<double> accuracies;
    for (const auto& o : outcomes) {
      errors.push_back(o.final_error);
      if (o.test_accuracy) accuracies.push_back(*o.test_accuracy);
    }
    const auto [e_mean, e_sd] = mean_sd(errors);
    std::printf("runs=%zu mean_final_E=%.9g sd=%.3g\n", outcomes.size(),
                e_mean, e_sd);
    if (!accuracies.empty()) {
      const auto [a_mean, a_sd] = mean_sd(accuracies);
      std::printf("runs=%zu mean_test_accuracy=%.6f sd=%.4f\n",
                  accuracies.size(), a_mean, a_sd);
    }
  }
  return kExitOk;
}

struct EvaluateArgs {
  std::string model_path;
  std::string data_path;
  std::optional<std::string> json_out;
};

int cmd_evaluate(const EvaluateArgs& args) {
  const fpnn::Model model = fpnn::load_model(args.model_path);
  const auto samples =
      fpnn::data::to_samples(fpnn::data::load_csv(args.data_path));
  if (samples.empty()) {
    throw fpnn::ValidationError("evaluation dataset is empty");
  }
  const auto normalized = fpnn::data::apply_normalization(model.norm, samples);
  const EvalReport report = evaluate_samples(model, normalized);
  print_report(report);
  if (args.json_out) {
    std::ofstream out(*args.json_out, std::ios::binary);
    if (!out) {
      throw fpnn::ValidationError("cannot write report file: " + *args.json_out);
    }
    out << report_to_json(report).dump(2) << '\n';
  }
  return kExitOk;
}

struct ReportArgs {
  std::vector<std::string> traces;
  std::optional<std::string> merged_out;
};

int cmd_report(const ReportArgs& args) {
  struct Row {
    std::string name;
    ga::TrainingTrace trace;
  };
  std::vector<Row> rows;
  for (const auto& path : args.traces) {
    Row row;
    row.name = fs::path(path).stem().string();
    row.trace = ga::read_trace_csv(path);
    if (row.trace.empty()) {
      throw fpnn::ValidationError("trace file has no records: " + path);
    }
    rows.push_back(std::move(row));
  }

  std::printf("%-28s %12s %14s %14s %12s\n", "trace", "generations",
              "final_best_E", "final_mean_E", "sa_accepts");
  for (const auto& row : rows) {
    std::size_t accepts = 0;
    for (const auto& rec : row.trace) accepts += rec.sa_accepts;
    const auto& last = row.trace.back();
    std::printf("%-28s %12zu %14.6g %14.6g %12zu\n", row.name.c_str(),
                last.generation, last.best_error, last.mean_error, accepts);
  }

  if (args.merged_out) {
    std::ofstream out(*args.merged_out, std::ios::binary);
    if (!out) {
      throw fpnn::ValidationError("cannot write merged file: " +
                                  *args.merged_out);
    }
    out << "trace," << ga::kTraceCsvHeader << '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) {
      // Copy the source lines so numbers stay byte-exact.
      std::ifstream in(args.traces[i]);
      std::string line;
      std::getline(in, line);  // header, already validated
      while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
          line.pop_back();
        if (line.empty()) continue;
        out << rows[i].name << ',' << line << '\n';
      }
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fréchet-kernel RBF process network for time-series classification"};
  app.require_subcommand(1);

  DistanceArgs distance_args;
  auto* distance = app.add_subcommand(
      "distance", "Fréchet distance between two sequence files");
  distance->add_option("file_a", distance_args.file_a, "first sequence file")
      ->required();
  distance->add_option("file_b", distance_args.file_b, "second sequence file")
      ->required();

  SynthArgs synth_args;
  auto* synth =
      app.add_subcommand("synth", "Generate a synthetic two-class dataset");
  synth->add_option("--per-class", synth_args.per_class, "samples per class");
  synth->add_option("--length", synth_args.length, "sample points per sequence");
  synth->add_option("--noise-sd", synth_args.noise_sd,
                    "Gaussian noise standard deviation");
  synth->add_option("--seed", synth_args.seed, "generator seed");
  synth->add_option("--out", synth_args.out, "output CSV path")->required();

  TrainArgs train_args;
  auto* train = app.add_subcommand("train", "Train a model from a JSON config");
  train->add_option("--config", train_args.config_path, "JSON run config")
      ->required();
  train->add_option("--seed", train_args.seed, "override trainer seed");
  train->add_option("--mode", train_args.mode, "override mode: ga_sa | ga_only");
  train->add_option("--data", train_args.data, "override dataset CSV path");
  train->add_option("--model", train_args.model_out, "override model output path");
  train->add_option("--trace", train_args.trace_out, "override trace output path");
  train->add_option("--threads", train_args.threads,
                    "override evaluation thread count");
  train->add_option("--repeats", train_args.repeats,
                    "run R times with seeds seed..seed+R-1 and report mean/sd");
  train->add_flag("--resplit", train_args.resplit,
                  "vary the split seed together with the trainer seed");
  train->add_option("--save-split", train_args.save_split,
                    "write the raw train/test splits as <prefix>-train.csv / -test.csv");

  EvaluateArgs eval_args;
  auto* evaluate =
      app.add_subcommand("evaluate", "Evaluate a saved model on a CSV dataset");
  evaluate->add_option("--model", eval_args.model_path, "model JSON path")
      ->required();
  evaluate->add_option("--data", eval_args.data_path, "dataset CSV path")
      ->required();
  evaluate->add_option("--json", eval_args.json_out,
                       "also write the report as JSON");

  ReportArgs report_args;
  auto* report = app.add_subcommand(
      "report", "Summarize one or more training traces");
  report->add_option("traces", report_args.traces, "trace CSV files")
      ->required()
      ->expected(-1);
  report->add_option("--merged", report_args.merged_out,
                     "write all traces into one CSV for plotting");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(distance)) return cmd_distance(distance_args);
    if (app.got_subcommand(synth)) return cmd_synth(synth_args);
    if (app.got_subcommand(train)) return cmd_train(train_args);
    if (app.got_subcommand(evaluate)) return cmd_evaluate(eval_args);
    if (app.got_subcommand(report)) return cmd_report(report_args);
  } catch (const fpnn::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const fpnn::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
