#pragma once

#include <stdexcept>
#include <string>

namespace ssepdual {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Result dimension exceeds the configured cap, or operand dimensions are
/// incompatible for the requested product/sum.
struct DimensionError : Error {
  using Error::Error;
};

/// Operands have mismatched shapes (e.g. residual of differently sized matrices).
struct ShapeError : Error {
  using Error::Error;
};

/// Site or auxiliary index out of the valid range.
struct IndexError : Error {
  using Error::Error;
};

/// Boundary rates satisfy alpha*beta = gamma*delta, which makes the ladder
/// representation singular (the r_n prefactor divides by alpha*beta - gamma*delta).
struct EquilibriumRatesError : Error {
  using Error::Error;
};

/// r_n vanished at an auxiliary index that a contraction can actually reach,
/// so the superdiagonal entry 1/r_n is genuinely divergent.
struct ZeroRnError : Error {
  long n;
  explicit ZeroRnError(long n_)
      : Error("r_n vanishes at reachable auxiliary index n = " + std::to_string(n_)),
        n(n_) {}
};

/// Rate-sum compatibility conditions for composing two intertwiners fail.
struct ConstraintViolatedError : Error {
  using Error::Error;
};

/// A matrix-product steady-state weight came out negative, which signals a
/// convention bug or rates outside the ansatz's domain of validity.
struct NegativeWeightError : Error {
  using Error::Error;
};

/// Mapping a state through an intertwiner annihilated it.
struct ZeroImageError : Error {
  using Error::Error;
};

/// Invalid configuration: bad rates, malformed config file, out-of-range options.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace ssepdual
