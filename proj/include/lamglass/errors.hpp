#pragma once

#include <stdexcept>
#include <string>

namespace lamglass {

/// Raised when a model, section or run configuration violates its contract.
/// The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Base class for solver failures. The CLI maps these to exit code 3.
class SolveError : public std::runtime_error {
 public:
  explicit SolveError(const std::string& what) : std::runtime_error(what) {}
};

/// The bordered (KKT) matrix could not be factorized, typically because the
/// supports do not remove all rigid-body modes.
class SingularSystemError : public SolveError {
 public:
  explicit SingularSystemError(const std::string& what) : SolveError(what) {}
};

}  // namespace lamglass
