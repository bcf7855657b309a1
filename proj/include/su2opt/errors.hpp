#pragma once

#include <stdexcept>
#include <string>

namespace su2opt {

// Base for all library errors so callers can catch one type at the CLI edge.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input (alpha, beta) is too far from the unit sphere to renormalize.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

// Frequency outside the admissible window of the requested branch, or a
// radicand went negative (past the border cut).
class RangeError : public Error {
 public:
  using Error::Error;
};

// A formula loses meaning for these parameters (division by zero drift,
// vanishing transverse bound, ...).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// The truncated frequency interval of a front line is empty at this time.
class EmptyLocusError : public Error {
 public:
  using Error::Error;
};

// Target not reached within the configured time horizon.
class UnreachableError : public Error {
 public:
  using Error::Error;
};

// Integrator step too coarse: unitarity drift between re-projections
// exceeded the hard bound.
class StepError : public Error {
 public:
  using Error::Error;
};

// Grid search exhausted the horizon without a hit.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

}  // namespace su2opt
