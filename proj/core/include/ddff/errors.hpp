#pragma once

#include <stdexcept>
#include <string>

namespace ddff {

// Bad user input: orders, durations, qubit indices, state normalization.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An operation was asked to rely on a structural property the input lacks.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Spectrum evaluated where it has no finite value.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Overlap integral with a non-integrable singularity at zero frequency.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, double exponent_sum)
      : std::runtime_error(what), exponent_sum_(exponent_sum) {}
  double exponent_sum() const noexcept { return exponent_sum_; }

 private:
  double exponent_sum_;
};

}  // namespace ddff
