#pragma once

#include <stdexcept>
#include <string>

namespace qdwg {

/// Operand dimensions do not agree (operator vs space, state vs state).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An integrator or a numerical invariant check failed (step underflow,
/// norm drift, positivity loss).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computational-basis state leaked out of its ray during a gate, which
/// signals that the dispersive regime was violated.
class LeakageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qdwg
