#include "fpnn/sequence.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "fpnn/errors.hpp"

namespace fpnn {

Sequence::Sequence(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw ValidationError("sequence must hold at least one value");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw ValidationError("sequence value at index " + std::to_string(i) +
                            " is not finite");
    }
  }
}

FunctionVectorSample::FunctionVectorSample(std::vector<Sequence> components)
    : components_(std::move(components)) {
  if (components_.empty()) {
    throw ValidationError("function vector sample needs at least one component");
  }
  const std::size_t len = components_.front().size();
  for (std::size_t i = 1; i < components_.size(); ++i) {
    if (components_[i].size() != len) {
      throw ValidationError(
          "component " + std::to_string(i) + " has length " +
          std::to_string(components_[i].size()) + ", expected " +
          std::to_string(len));
    }
  }
}

}  // namespace fpnn
