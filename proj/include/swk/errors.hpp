#pragma once

#include <stdexcept>
#include <string>

namespace swk {

/// Evaluation hit a point where a formula divides by zero: a pole of Tκ,
/// a degenerate metric coefficient, or a centrifugal wall sᵢ = 0.
///
/// `index()` names the offending coordinate or ambient slot when there is
/// one (ambient index 0..N for potential walls), and -1 otherwise.
class SingularityError : public std::domain_error {
 public:
  explicit SingularityError(const std::string& what, int index = -1)
      : std::domain_error(what), index_(index) {}

  int index() const noexcept { return index_; }

 private:
  int index_;
};

/// A chart point lies outside (or within the safety margin of) the open set
/// where the chart's formulas are valid.
class ChartDomainError : public SingularityError {
 public:
  using SingularityError::SingularityError;
};

/// Invalid user-supplied configuration (dimension, β length, tolerances...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace swk
