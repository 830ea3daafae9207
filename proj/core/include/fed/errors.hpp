#pragma once

#include <stdexcept>
#include <string>

namespace fed {

/// Parameter violates a documented invariant. Messages name the offending
/// field and the invariant, e.g. "DragConfig.z0: must be > 0 (got -1)".
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation requested exactly on a pole of the response function
/// (omega = 0, or the Doppler-shifted frequency omega - k.v0 = 0).
/// Quadrature routines catch the location up front and split there instead.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A frequency/wave-vector grid is too coarse (or too narrow) for the
/// requested evaluation.
class GridError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative or adaptive numerical routine exhausted its budget before
/// reaching the requested tolerance, or a fit failed its quality gate.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed (e.g. the two-sheet quanta counts
/// disagree). Indicates an implementation bug, not bad input.
class SymmetryError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace fed
