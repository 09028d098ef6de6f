#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace fpnn {

/// One discretely sampled scalar signal. Never empty, every value finite;
/// both are enforced at construction.
class Sequence {
 public:
  explicit Sequence(std::vector<double> values);
  Sequence(std::initializer_list<double> values)
      : Sequence(std::vector<double>(values)) {}

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double front() const { return values_.front(); }
  double back() const { return values_.back(); }

  friend bool operator==(const Sequence& a, const Sequence& b) {
    return a.values_ == b.values_;
  }

 private:
  std::vector<double> values_;
};

/// A bundle of component signals sampled on a common grid: n components of
/// identical length S. The discrete form of a time-varying function vector.
class FunctionVectorSample {
 public:
  explicit FunctionVectorSample(std::vector<Sequence> components);
  FunctionVectorSample(std::initializer_list<Sequence> components)
      : FunctionVectorSample(std::vector<Sequence>(components)) {}

  const std::vector<Sequence>& components() const { return components_; }
  const Sequence& component(std::size_t i) const { return components_[i]; }
  std::size_t component_count() const { return components_.size(); }  // n
  std::size_t length() const { return components_.front().size(); }   // S

  friend bool operator==(const FunctionVectorSample& a,
                         const FunctionVectorSample& b) {
    return a.components_ == b.components_;
  }

 private:
  std::vector<Sequence> components_;
};

}  // namespace fpnn
