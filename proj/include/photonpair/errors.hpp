#pragma once

#include <stdexcept>
#include <string>

namespace photonpair {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Wavelength outside a Sellmeier set's validity interval.
struct DispersionRangeError : Error {
  using Error::Error;
};

// No collinear degenerate phasematching angle in (0, 90) deg.
struct NotPhasematchableError : Error {
  using Error::Error;
};

// JSA support reaches the grid boundary (boundary mass above threshold).
struct SupportClippedError : Error {
  using Error::Error;
};

// Trigger filter has no overlap with the grid.
struct EmptyHeraldingError : Error {
  using Error::Error;
};

// Gaussian-model physicality T_ss^2*T_ii^2 > T_si^4 violated; the
// closed forms are being used outside their derivation.
struct PhysicalityError : Error {
  using Error::Error;
};

// Profile maximum at the grid edge; width is not measurable.
struct ClippedProfileError : Error {
  using Error::Error;
};

// Profile never crosses the width threshold.
struct DegenerateProfileError : Error {
  using Error::Error;
};

// An operation was handed an input that violates its contract
// (e.g. a trigger-filtered density matrix where the p = 1/K identity
// does not apply).
struct ContractViolationError : Error {
  using Error::Error;
};

// Scenario / data file parse failure.
struct ParseError : Error {
  using Error::Error;
};

struct SolverError : Error {
  using Error::Error;
};

}  // namespace photonpair
