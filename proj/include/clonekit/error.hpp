#pragma once

#include <stdexcept>
#include <string>

namespace clonekit {

// Precondition violated by the caller (bad dimensions, probabilities, parity...).
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// A configured size cap (partition count, dense dimension) would be exceeded.
class CapExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Iterative refinement did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, double best_value, double gap)
      : std::runtime_error(what), best_value_(best_value), gap_(gap) {}

  double best_value() const noexcept { return best_value_; }
  double gap() const noexcept { return gap_; }

private:
  double best_value_;
  double gap_;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw DomainError(message);
}

}  // namespace clonekit
