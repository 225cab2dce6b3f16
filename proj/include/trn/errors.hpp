#pragma once

#include <stdexcept>
#include <string>

namespace trn {

// Base class for all library-raised failures.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A schedule or document refers to an event that does not exist / is missing.
struct MissingEventError : Error {
  using Error::Error;
};

// Structurally invalid network (undeclared endpoints, duplicate contingent
// targets, chained contingency, bad probability, ...).
struct MalformedNetworkError : Error {
  using Error::Error;
};

// Operation that needs a consistent network was handed an inconsistent one.
struct InconsistentNetworkError : Error {
  using Error::Error;
};

// Operation asked of an ATN variant that does not support it.
struct UnsupportedAtnError : Error {
  using Error::Error;
};

// Wall-clock deadline exceeded inside a solver.
struct TimeoutError : Error {
  using Error::Error;
};

// Exhaustive enumeration requested beyond the configured size cap.
struct CapExceededError : Error {
  using Error::Error;
};

// Instance generator gave up (retry budget exhausted).
struct GenerationError : Error {
  using Error::Error;
};

// External MIP solver process could not be spawned / was not found.
struct SolverNotFoundError : Error {
  using Error::Error;
};

// External MIP solver exceeded its deadline and was killed.
struct SolverTimeoutError : Error {
  using Error::Error;
};

// External MIP solver ran but exited nonzero.
struct SolverRunError : Error {
  using Error::Error;
};

// External solver output did not follow the expected format.
struct SolutionParseError : Error {
  using Error::Error;
};

// Rounded MIP binaries violate pairing or do not form a total order.
struct InconsistentBinariesError : Error {
  using Error::Error;
};

// Input document failed validation against the published schema.
struct DocumentError : Error {
  using Error::Error;
};

}  // namespace trn
