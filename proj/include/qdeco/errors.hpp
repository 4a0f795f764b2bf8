// Error types shared across the library. Validation failures carry the
// machine-readable name of the violated constraint.
#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace qdeco {

class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string constraint, const std::string& detail)
      : std::runtime_error(detail + " [" + constraint + "]"),
        constraint_(std::move(constraint)) {}

  const std::string& constraint() const noexcept { return constraint_; }

 private:
  std::string constraint_;
};

class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& detail)
      : std::runtime_error(detail) {}
};

// Thrown when the truncated-basis integrator sees occupation of the top
// levels above budget; carries a suggested larger dimension.
class LeakageError : public std::runtime_error {
 public:
  LeakageError(const std::string& detail, int suggested_dimension)
      : std::runtime_error(detail), suggested_dimension_(suggested_dimension) {}

  int suggested_dimension() const noexcept { return suggested_dimension_; }

 private:
  int suggested_dimension_;
};

}  // namespace qdeco
