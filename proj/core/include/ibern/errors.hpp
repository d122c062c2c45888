#pragma once

#include <stdexcept>
#include <string>

namespace ibern {

/// Argument outside the mathematical domain of an operation (t outside
/// [0,1], index past the degree, k = 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed caller-supplied data: non-finite samples, length mismatches.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A linear system that is singular or too ill-conditioned to trust.
class ConditioningError : public std::runtime_error {
 public:
  ConditioningError(const std::string& what, double condition)
      : std::runtime_error(what), condition_(condition) {}

  /// 1-norm condition number estimate of the offending matrix.
  [[nodiscard]] double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

/// A request whose working set exceeds a configured hard cap.
class ResourceError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Failure while assembling a constructed test function.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown name in the function registry.
class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace ibern
