#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gmt {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A simplex whose vertices are (numerically) affinely dependent.
class DegenerateCell : public Error {
 public:
  using Error::Error;
};

/// Operands living in different ambient or chain dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class DuplicateCell : public Error {
 public:
  using Error::Error;
};

/// A fill cell references an m-face that is not an m-cell of the complex.
class MissingFace : public Error {
 public:
  using Error::Error;
};

/// Two cell sets overlap in a pattern the arrangement code cannot resolve.
class RefinementUnsupported : public Error {
 public:
  using Error::Error;
};

/// Too many atoms for the bounded-Lipschitz transport solver.
class AtomBudget : public Error {
 public:
  using Error::Error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A discrete flow violated one of its monitored inequalities.
class FlowDiagnosticFailure : public Error {
 public:
  FlowDiagnosticFailure(std::size_t step, const std::string& what)
      : Error("step " + std::to_string(step) + ": " + what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

}  // namespace gmt
