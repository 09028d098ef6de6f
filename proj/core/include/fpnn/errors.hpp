#pragma once

#include <stdexcept>
#include <string>

namespace fpnn {

/// Invalid inputs, shapes, configuration or file contents.
/// The CLI maps this family to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Numeric breakdown at run time (non-finite objective etc.).
/// The CLI maps this family to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fpnn
