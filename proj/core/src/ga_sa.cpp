#include "fpnn/ga_sa.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>
#include <utility>

#include "fpnn/errors.hpp"

namespace fpnn::ga {

namespace {

// Substream kinds for derive_seed; one per stochastic decision site.
constexpr std::uint64_t kStreamInit = 1;
constexpr std::uint64_t kStreamSelect = 2;
constexpr std::uint64_t kStreamShuffle = 3;
constexpr std::uint64_t kStreamCrossover = 4;
constexpr std::uint64_t kStreamMutate = 5;
constexpr std::uint64_t kStreamSa = 6;

// Keeps exp(-dC / t) well defined as the schedule approaches zero.
constexpr double kTemperatureFloor = 1e-12;

void evaluate_population(Population& population, const ObjectiveFn& objective,
                         unsigned threads, std::size_t generation) {
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < population.size(); ++i) {
    if (!population[i].evaluated) pending.push_back(i);
  }
  if (pending.empty()) return;

  if (threads <= 1 || pending.size() < 2) {
    for (std::size_t i : pending) {
      population[i].set_error(objective(population[i].genes));
    }
  } else {
    // Each worker owns a stride of slots; values are pure functions of the
    // genes, so the result is identical for any thread count.
    const unsigned workers =
        std::min<unsigned>(threads, static_cast<unsigned>(pending.size()));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w]() {
        for (std::size_t k = w; k < pending.size(); k += workers) {
          Chromosome& c = population[pending[k]];
          c.set_error(objective(c.genes));
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  for (std::size_t i : pending) {
    if (!std::isfinite(population[i].error)) {
      throw NumericalError("non-finite objective at generation " +
                           std::to_string(generation));
    }
  }
}

const Chromosome& best_member(const Population& population) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < population.size(); ++i) {
    if (population[i].error < population[best].error) best = i;
  }
  return population[best];
}

double mean_error(const Population& population) {
  double sum = 0.0;
  for (const auto& c : population) sum += c.error;
  return sum / static_cast<double>(population.size());
}

}  // namespace

GeneBounds::GeneBounds(std::vector<std::pair<double, double>> bounds)
    : bounds_(std::move(bounds)) {
  if (bounds_.empty()) {
    throw ValidationError("gene bounds must not be empty");
  }
  for (std::size_t i = 0; i < bounds_.size(); ++i) {
    const auto [lo, hi] = bounds_[i];
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
      throw ValidationError("gene " + std::to_string(i) +
                            " needs finite bounds with min < max");
    }
  }
}

double GeneBounds::clamp(std::size_t i, double v) const {
  return std::min(std::max(v, bounds_[i].first), bounds_[i].second);
}

void Chromosome::set_error(double e) {
  error = e;
  fit = fitness(e);
  evaluated = true;
}

void Chromosome::invalidate() {
  error = std::numeric_limits<double>::infinity();
  fit = 0.0;
  evaluated = false;
}

void TrainerConfig::validate() const {
  if (population_size < 2) {
    throw ValidationError("population size must be at least 2");
  }
  if (max_generations < 1) {
    throw ValidationError("max generations must be at least 1");
  }
  if (!(target_error >= 0.0)) {
    throw ValidationError("target error must be non-negative");
  }
  if (!(crossover_prob >= 0.0 && crossover_prob <= 1.0)) {
    throw ValidationError("crossover probability must lie in [0, 1]");
  }
  if (!(mutation_prob >= 0.0 && mutation_prob <= 1.0)) {
    throw ValidationError("mutation probability must lie in [0, 1]");
  }
  if (crossover_mix && !(*crossover_mix > 0.0 && *crossover_mix < 1.0)) {
    throw ValidationError("crossover mixing weight must lie in (0, 1)");
  }
  if (initial_temperature && !(*initial_temperature > 0.0)) {
    throw ValidationError("initial temperature must be positive");
  }
  if (!(annealing_rate > 0.0 && annealing_rate < 1.0)) {
    throw ValidationError("annealing rate must lie in (0, 1)");
  }
  if (!(sigma_min > 0.0)) {
    throw ValidationError("sigma floor must be positive");
  }
  if (!std::isfinite(threshold)) {
    throw ValidationError("decision threshold must be finite");
  }
  if (eval_threads < 1) {
    throw ValidationError("eval threads must be at least 1");
  }
}

AnnealState anneal(const AnnealState& state, double rate) {
  if (!(rate > 0.0 && rate < 1.0)) {
    throw ValidationError("annealing rate must lie in (0, 1)");
  }
  return AnnealState{state.step + 1, rate * state.temperature};
}

Population init_population(const GeneBounds& bounds, std::size_t n,
                           const ObjectiveFn& objective, Rng& rng,
                           unsigned eval_threads) {
  if (n < 2) {
    throw ValidationError("population size must be at least 2");
  }
  Population population(n);
  for (auto& c : population) {
    c.genes.resize(bounds.size());
    for (std::size_t g = 0; g < bounds.size(); ++g) {
      c.genes[g] = rng.uniform(bounds.lower(g), bounds.upper(g));
    }
  }
  evaluate_population(population, objective, eval_threads, 0);
  return population;
}

std::vector<double> selection_probabilities(
    const std::vector<double>& fitnesses) {
  if (fitnesses.empty()) {
    throw ValidationError("selection over an empty population");
  }
  double total = 0.0;
  for (double f : fitnesses) {
    if (!(f > 0.0)) {
      throw ValidationError("selection requires positive fitness values");
    }
    total += f;
  }
  std::vector<double> probs(fitnesses.size());
  for (std::size_t i = 0; i < fitnesses.size(); ++i) {
    probs[i] = fitnesses[i] / total;
  }
  return probs;
}

Population select(const Population& population, Rng& rng) {
  if (population.empty()) {
    throw ValidationError("selection over an empty population");
  }
  std::vector<double> fits(population.size());
  for (std::size_t i = 0; i < population.size(); ++i) {
    if (!population[i].evaluated) {
      throw ValidationError("selection requires an evaluated population");
    }
    fits[i] = population[i].fit;
  }
  const std::vector<double> probs = selection_probabilities(fits);
  std::vector<double> cumulative(probs.size());
  std::partial_sum(probs.begin(), probs.end(), cumulative.begin());
  cumulative.back() = 1.0;  // close the top against rounding

  Population next;
  next.reserve(population.size());
  for (std::size_t k = 0; k < population.size(); ++k) {
    const double u = rng.uniform();
    const auto it =
        std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const std::size_t idx = static_cast<std::size_t>(
        std::min<std::ptrdiff_t>(it - cumulative.begin(),
                                 static_cast<std::ptrdiff_t>(probs.size()) - 1));
    next.push_back(population[idx]);
  }
  return next;
}

std::pair<Chromosome, Chromosome> crossover(const Chromosome& x1,
                                            const Chromosome& x2, double mix,
                                            double crossover_prob, Rng& rng,
                                            const GeneBounds* bounds) {
  if (x1.genes.size() != x2.genes.size()) {
    throw ValidationError("crossover parents have different lengths");
  }
  if (!(mix > 0.0 && mix < 1.0)) {
    throw ValidationError("crossover mixing weight must lie in (0, 1)");
  }
  if (rng.uniform() >= crossover_prob) {
    return {x1, x2};
  }
  Chromosome c1, c2;
  c1.genes.resize(x1.genes.size());
  c2.genes.resize(x1.genes.size());
  for (std::size_t g = 0; g < x1.genes.size(); ++g) {
    double g1 = mix * x1.genes[g] + (1.0 - mix) * x2.genes[g];
    double g2 = (1.0 - mix) * x1.genes[g] + mix * x2.genes[g];
    if (bounds) {
      g1 = bounds->clamp(g, g1);
      g2 = bounds->clamp(g, g2);
    }
    c1.genes[g] = g1;
    c2.genes[g] = g2;
  }
  return {std::move(c1), std::move(c2)};
}

Chromosome mutate(const Chromosome& x, const GeneBounds& bounds,
                  double mutation_prob, Rng& rng) {
  if (x.genes.size() != bounds.size()) {
    throw ValidationError("chromosome length does not match bounds");
  }
  Chromosome out = x;
  bool changed = false;
  for (std::size_t g = 0; g < out.genes.size(); ++g) {
    if (rng.uniform() < mutation_prob) {
      out.genes[g] = rng.uniform(bounds.lower(g), bounds.upper(g));
      changed = true;
    }
  }
  if (changed) out.invalidate();
  return out;
}

void elitist_retain(Population& population, const Chromosome& best) {
  if (population.empty()) {
    throw ValidationError("retention over an empty population");
  }
  if (!best.evaluated) {
    throw ValidationError("retention requires an evaluated best chromosome");
  }
  std::size_t worst = 0;
  for (std::size_t i = 0; i < population.size(); ++i) {
    if (population[i].error <= best.error) return;  // best already survives
    if (population[i].error > population[worst].error) worst = i;
  }
  population[worst] = best;
}

Chromosome sa_step(const Chromosome& x, const GeneBounds& bounds,
                   double temperature, SaPerturbation perturbation,
                   const ObjectiveFn& objective, Rng& rng, bool* accepted) {
  if (accepted) *accepted = false;
  if (!(temperature > 0.0)) {
    throw ValidationError("annealing temperature must be positive");
  }
  if (!x.evaluated) {
    throw ValidationError("Metropolis step requires an evaluated chromosome");
  }
  if (x.genes.size() != bounds.size()) {
    throw ValidationError("chromosome length does not match bounds");
  }

  Chromosome candidate = x;
  if (perturbation == SaPerturbation::kAllGenes) {
    for (std::size_t g = 0; g < candidate.genes.size(); ++g) {
      const double reach = bounds.span(g) / 10.0;
      candidate.genes[g] =
          bounds.clamp(g, candidate.genes[g] + rng.uniform(-reach, reach));
    }
  } else {
    const std::size_t g = rng.uniform_index(candidate.genes.size());
    const double reach = bounds.span(g) / 10.0;
    candidate.genes[g] =
        bounds.clamp(g, candidate.genes[g] + rng.uniform(-reach, reach));
  }
  candidate.set_error(objective(candidate.genes));

  const double delta = candidate.error - x.error;
  const double t = std::max(temperature, kTemperatureFloor);
  const double p_accept = delta <= 0.0 ? 1.0 : std::exp(-delta / t);
  if (p_accept > rng.uniform()) {
    if (accepted) *accepted = true;
    return candidate;
  }
  return x;
}

TrainResult train(const NetworkShape& shape,
                  const std::vector<LabeledSample>& samples,
                  const GeneBounds& bounds, const TrainerConfig& config) {
  config.validate();
  shape.validate();
  if (samples.empty()) {
    throw ValidationError("training needs at least one sample");
  }
  for (const auto& s : samples) {
    if (s.input.component_count() != shape.components) {
      throw ValidationError("sample component count does not match network");
    }
  }
  if (bounds.size() != shape.gene_count()) {
    throw ValidationError("bounds length " + std::to_string(bounds.size()) +
                          " does not match gene count " +
                          std::to_string(shape.gene_count()));
  }

  const ObjectiveFn obj = [&](const std::vector<double>& genes) {
    return objective(decode(genes, shape, config.sigma_min), samples);
  };

  Rng init_rng(derive_seed(config.seed, kStreamInit, 0, 0));
  Population population = init_population(bounds, config.population_size, obj,
                                          init_rng, config.eval_threads);

  Chromosome best = best_member(population);
  AnnealState cooling{1, config.initial_temperature
                             ? *config.initial_temperature
                             : std::max(best.error, 1.0)};

  TrainingTrace trace;
  for (std::size_t gen = 1; gen <= config.max_generations; ++gen) {
    // Only reachable at gen 1: a later satisfied target breaks below.
    if (best.error <= config.target_error) {
      trace.push_back({gen, best.error, mean_error(population), best.fit,
                       cooling.temperature, 0});
      break;
    }

    Rng select_rng(derive_seed(config.seed, kStreamSelect, gen, 0));
    population = select(population, select_rng);

    // Pair mates over a shuffled order; an odd leftover passes through.
    Rng shuffle_rng(derive_seed(config.seed, kStreamShuffle, gen, 0));
    std::vector<std::size_t> order(population.size());
    std::iota(order.begin(), order.end(), 0);
    shuffle_rng.shuffle(order);
    Population crossed = population;
    for (std::size_t p = 0; p + 1 < order.size(); p += 2) {
      Rng pair_rng(derive_seed(config.seed, kStreamCrossover, gen, p / 2));
      const double mix =
          config.crossover_mix ? *config.crossover_mix : pair_rng.uniform_open();
      auto [c1, c2] = crossover(population[order[p]], population[order[p + 1]],
                                mix, config.crossover_prob, pair_rng, &bounds);
      crossed[order[p]] = std::move(c1);
      crossed[order[p + 1]] = std::move(c2);
    }
    population = std::move(crossed);

    for (std::size_t i = 0; i < population.size(); ++i) {
      Rng mutate_rng(derive_seed(config.seed, kStreamMutate, gen, i));
      population[i] =
          mutate(population[i], bounds, config.mutation_prob, mutate_rng);
    }

    evaluate_population(population, obj, config.eval_threads, gen);
    if (best_member(population).error < best.error) {
      best = best_member(population);
    }
    elitist_retain(population, best);

    std::size_t sa_accepts = 0;
    const double temperature_used = cooling.temperature;
    if (config.mode == TrainMode::kGaSa) {
      for (std::size_t i = 0; i < population.size(); ++i) {
        Rng sa_rng(derive_seed(config.seed, kStreamSa, gen, i));
        bool accepted = false;
        population[i] =
            sa_step(population[i], bounds, cooling.temperature,
                    config.sa_perturbation, obj, sa_rng, &accepted);
        if (accepted) ++sa_accepts;
      }
      if (best_member(population).error < best.error) {
        best = best_member(population);
      }
      elitist_retain(population, best);
      cooling = anneal(cooling, config.annealing_rate);
    }

    trace.push_back({gen, best.error, mean_error(population), best.fit,
                     temperature_used, sa_accepts});
    if (best.error <= config.target_error) break;
  }

  TrainResult result;
  result.params = decode(best.genes, shape, config.sigma_min);
  result.trace = std::move(trace);
  result.best = std::move(best);
  result.reached_target = result.best.error <= config.target_error;
  result.generations = result.trace.back().generation;
  return result;
}

}  // namespace fpnn::ga
