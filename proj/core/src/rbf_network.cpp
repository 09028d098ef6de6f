#include "fpnn/rbf_network.hpp"

#include <cmath>
#include <string>

#include "fpnn/errors.hpp"
#include "fpnn/frechet.hpp"

namespace fpnn {

void NetworkShape::validate() const {
  if (components < 1 || hidden < 1 || length < 1) {
    throw ValidationError("network shape requires n, m, S >= 1");
  }
}

NetworkShape NetworkParams::shape() const {
  if (centers.empty()) {
    throw ValidationError("network parameters hold no hidden nodes");
  }
  return NetworkShape{centers.front().component_count(), centers.size(),
                      centers.front().length()};
}

void NetworkParams::validate(double sigma_min) const {
  const NetworkShape s = shape();
  if (sigmas.size() != s.hidden || weights.size() != s.hidden) {
    throw ValidationError("parameter arrays disagree on hidden node count");
  }
  for (const auto& c : centers) {
    if (c.component_count() != s.components || c.length() != s.length) {
      throw ValidationError("center shapes are not uniform");
    }
  }
  for (std::size_t j = 0; j < sigmas.size(); ++j) {
    if (!(sigmas[j] >= sigma_min)) {
      throw ValidationError("sigma " + std::to_string(j) + " below floor " +
                            std::to_string(sigma_min));
    }
  }
  for (double w : weights) {
    if (!std::isfinite(w)) throw ValidationError("non-finite weight");
  }
}

double neuron_activation(const FunctionVectorSample& x,
                         const FunctionVectorSample& center, double sigma,
                         double sigma_min) {
  if (x.component_count() != center.component_count()) {
    throw ValidationError("input and center component counts differ");
  }
  if (!(sigma >= sigma_min)) {
    throw ValidationError("kernel width " + std::to_string(sigma) +
                          " below floor " + std::to_string(sigma_min));
  }
  const double d = generalized_frechet(x, center);
  return std::exp(-(d * d) / (2.0 * sigma * sigma));
}

double forward(const NetworkParams& params, const FunctionVectorSample& x) {
  double y = 0.0;
  for (std::size_t j = 0; j < params.centers.size(); ++j) {
    y += params.weights[j] *
         neuron_activation(x, params.centers[j], params.sigmas[j],
                           /*sigma_min=*/0.0);
  }
  return y;
}

double objective(const NetworkParams& params,
                 const std::vector<LabeledSample>& samples) {
  if (samples.empty()) {
    throw ValidationError("objective needs at least one sample");
  }
  double e = 0.0;
  for (const auto& sample : samples) {
    const double r = forward(params, sample.input) - sample.target;
    e += r * r;
  }
  return e;
}

double fitness(double error) {
  if (!(error >= 0.0) || !std::isfinite(error)) {
    throw ValidationError("fitness requires a finite non-negative error");
  }
  return 1.0 / (1.0 + error);
}

int classify(double y, double threshold) {
  if (!std::isfinite(threshold)) {
    throw ValidationError("decision threshold must be finite");
  }
  return y >= threshold ? 1 : 0;
}

std::vector<double> encode(const NetworkParams& params) {
  const NetworkShape s = params.shape();
  params.validate(/*sigma_min=*/0.0);
  std::vector<double> genes;
  genes.reserve(s.gene_count());
  for (const auto& center : params.centers) {
    for (const auto& component : center.components()) {
      genes.insert(genes.end(), component.values().begin(),
                   component.values().end());
    }
  }
  genes.insert(genes.end(), params.sigmas.begin(), params.sigmas.end());
  genes.insert(genes.end(), params.weights.begin(), params.weights.end());
  return genes;
}

NetworkParams decode(const std::vector<double>& genes,
                     const NetworkShape& shape, double sigma_min) {
  shape.validate();
  if (genes.size() != shape.gene_count()) {
    throw ValidationError("chromosome length " + std::to_string(genes.size()) +
                          " does not match gene count " +
                          std::to_string(shape.gene_count()));
  }
  NetworkParams params;
  params.centers.reserve(shape.hidden);
  std::size_t pos = 0;
  for (std::size_t j = 0; j < shape.hidden; ++j) {
    std::vector<Sequence> components;
    components.reserve(shape.components);
    for (std::size_t i = 0; i < shape.components; ++i) {
      components.emplace_back(std::vector<double>(
          genes.begin() + pos, genes.begin() + pos + shape.length));
      pos += shape.length;
    }
    params.centers.emplace_back(std::move(components));
  }
  params.sigmas.assign(genes.begin() + pos, genes.begin() + pos + shape.hidden);
  pos += shape.hidden;
  params.weights.assign(genes.begin() + pos, genes.begin() + pos + shape.hidden);
  for (double& sigma : params.sigmas) {
    sigma = std::max(sigma, sigma_min);
  }
  return params;
}

}  // namespace fpnn
