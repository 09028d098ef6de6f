#pragma once

#include <cstddef>
#include <vector>

#include "fpnn/sequence.hpp"

namespace fpnn {

/// Floor for Gaussian kernel widths; keeps exp(-d^2 / 2*sigma^2) well
/// defined. Defaults to 1e-3, i.e. one thousandth of the unit data range
/// produced by min-max normalization.
inline constexpr double kDefaultSigmaMin = 1e-3;

/// Default decision threshold for {0,1} targets.
inline constexpr double kDefaultThreshold = 0.5;

/// Structural parameters of the network: n input components, m hidden
/// radial basis nodes, S sample points per component.
struct NetworkShape {
  std::size_t components = 1;  // n
  std::size_t hidden = 1;      // m
  std::size_t length = 1;      // S

  /// Number of free parameters: m * (n*S + 2).
  std::size_t gene_count() const { return hidden * (components * length + 2); }

  void validate() const;

  friend bool operator==(const NetworkShape&, const NetworkShape&) = default;
};

/// Everything training optimizes: m center function vectors, m kernel
/// widths, m output weights.
struct NetworkParams {
  std::vector<FunctionVectorSample> centers;
  std::vector<double> sigmas;
  std::vector<double> weights;

  NetworkShape shape() const;
  void validate(double sigma_min = kDefaultSigmaMin) const;

  friend bool operator==(const NetworkParams&, const NetworkParams&) = default;
};

/// One training or test case: a function vector input and its target.
struct LabeledSample {
  FunctionVectorSample input;
  double target = 0.0;
};

/// Gaussian response of one hidden node:
/// exp(-d^2 / (2*sigma^2)) with d the generalized Fréchet distance
/// between the input and the node's center. Always in (0, 1].
double neuron_activation(const FunctionVectorSample& x,
                         const FunctionVectorSample& center, double sigma,
                         double sigma_min = kDefaultSigmaMin);

/// Network output: weighted sum of hidden node activations.
double forward(const NetworkParams& params, const FunctionVectorSample& x);

/// Least-squares training objective: sum of squared residuals over the
/// sample list.
double objective(const NetworkParams& params,
                 const std::vector<LabeledSample>& samples);

/// Fitness of an objective value: 1 / (1 + E). Strictly decreasing in E,
/// range (0, 1].
double fitness(double error);

/// Thresholded class decision; the boundary goes to class 1.
int classify(double y, double threshold = kDefaultThreshold);

/// Flattens parameters into the fixed gene layout: center values ordered
/// by (node, component, sample point), then the m widths, then the m
/// weights.
std::vector<double> encode(const NetworkParams& params);

/// Inverse of encode for a given shape; widths are clamped up to
/// sigma_min. Throws on a gene-count mismatch.
NetworkParams decode(const std::vector<double>& genes,
                     const NetworkShape& shape,
                     double sigma_min = kDefaultSigmaMin);

}  // namespace fpnn
