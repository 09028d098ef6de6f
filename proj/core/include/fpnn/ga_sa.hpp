#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "fpnn/rbf_network.hpp"
#include "fpnn/rng.hpp"

namespace fpnn::ga {

/// Per-gene search interval; min < max for every gene.
class GeneBounds {
 public:
  explicit GeneBounds(std::vector<std::pair<double, double>> bounds);

  std::size_t size() const { return bounds_.size(); }
  double lower(std::size_t i) const { return bounds_[i].first; }
  double upper(std::size_t i) const { return bounds_[i].second; }
  double span(std::size_t i) const { return bounds_[i].second - bounds_[i].first; }
  double clamp(std::size_t i, double v) const;
  const std::vector<std::pair<double, double>>& pairs() const { return bounds_; }

 private:
  std::vector<std::pair<double, double>> bounds_;
};

/// Decimal-coded candidate solution with its cached evaluation.
struct Chromosome {
  std::vector<double> genes;
  double error = std::numeric_limits<double>::infinity();  // objective E
  double fit = 0.0;                                        // 1 / (1 + E)
  bool evaluated = false;

  void set_error(double e);
  void invalidate();
};

using Population = std::vector<Chromosome>;
using ObjectiveFn = std::function<double(const std::vector<double>&)>;

enum class TrainMode { kGaSa, kGaOnly };
enum class SaPerturbation { kAllGenes, kOneGene };

/// Hyperparameters of the hybrid optimizer. Defaults follow the common
/// experiment setup: population 25, 1000 generations, target error 0.03.
struct TrainerConfig {
  std::size_t population_size = 25;
  std::size_t max_generations = 1000;
  double target_error = 0.03;
  double crossover_prob = 0.8;
  double mutation_prob = 0.05;
  /// Fixed arithmetic-crossover mixing weight in (0,1); when unset a fresh
  /// weight is sampled per pair.
  std::optional<double> crossover_mix;
  /// Explicit initial temperature; when unset it adapts to
  /// max(initial best error, 1).
  std::optional<double> initial_temperature;
  double annealing_rate = 0.95;
  SaPerturbation sa_perturbation = SaPerturbation::kAllGenes;
  TrainMode mode = TrainMode::kGaSa;
  std::uint64_t seed = 0;
  double sigma_min = kDefaultSigmaMin;
  double threshold = kDefaultThreshold;
  unsigned eval_threads = 1;

  void validate() const;
};

/// Geometric cooling state: generation counter and current temperature.
struct AnnealState {
  std::size_t step = 1;
  double temperature = 1.0;
};

/// One cooling step: temperature scaled by rate in (0,1), counter advanced.
AnnealState anneal(const AnnealState& state, double rate);

/// Per-generation training record.
struct GenerationRecord {
  std::size_t generation = 0;
  double best_error = 0.0;
  double mean_error = 0.0;
  double best_fitness = 0.0;
  double temperature = 0.0;
  std::size_t sa_accepts = 0;
};

using TrainingTrace = std::vector<GenerationRecord>;

/// N chromosomes with genes drawn uniformly within their bounds, all
/// evaluated. Requires n >= 2.
Population init_population(const GeneBounds& bounds, std::size_t n,
                           const ObjectiveFn& objective, Rng& rng,
                           unsigned eval_threads = 1);

/// Proportional (roulette) selection weights: f_i / sum_j f_j.
std::vector<double> selection_probabilities(const std::vector<double>& fitnesses);

/// Samples a full population with replacement, each member chosen with
/// probability proportional to its fitness.
Population select(const Population& population, Rng& rng);

/// Arithmetic crossover: with probability crossover_prob returns the pair
/// (a*X1 + (1-a)*X2, (1-a)*X1 + a*X2), otherwise copies of the parents.
/// mix must lie in (0,1). When bounds are supplied offspring are clamped,
/// guarding the last-ulp rounding of the convex combination.
std::pair<Chromosome, Chromosome> crossover(const Chromosome& x1,
                                            const Chromosome& x2, double mix,
                                            double crossover_prob, Rng& rng,
                                            const GeneBounds* bounds = nullptr);

/// Uniform mutation: each gene independently replaced, with probability
/// mutation_prob, by a fresh uniform draw from its bounds.
Chromosome mutate(const Chromosome& x, const GeneBounds& bounds,
                  double mutation_prob, Rng& rng);

/// Optimal retention: if no member matches or beats `best`, the worst
/// member is replaced by a copy of it.
void elitist_retain(Population& population, const Chromosome& best);

/// One Metropolis move: perturbs genes by uniform noise of one tenth of
/// the gene span, clamps to bounds, and accepts the candidate with
/// probability min(1, exp(-dC / temperature)). Returns the accepted
/// candidate or the unchanged input; `accepted` reports which.
Chromosome sa_step(const Chromosome& x, const GeneBounds& bounds,
                   double temperature, SaPerturbation perturbation,
                   const ObjectiveFn& objective, Rng& rng,
                   bool* accepted = nullptr);

struct TrainResult {
  NetworkParams params;
  TrainingTrace trace;
  Chromosome best;
  bool reached_target = false;
  std::size_t generations = 0;
};

/// Full generational loop: evaluate, select, crossover, mutate, retain,
/// per-chromosome annealed Metropolis step (skipped in kGaOnly mode),
/// cool, until the best error reaches the target or the generation cap.
/// Identical (config, samples, seed) produce bit-identical results for
/// any eval_threads value.
TrainResult train(const NetworkShape& shape,
                  const std::vector<LabeledSample>& samples,
                  const GeneBounds& bounds, const TrainerConfig& config);

}  // namespace fpnn::ga
