#ifndef PWIND_ERRORS_HPP
#define PWIND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pwind {

/// Base class for all pwind failures.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bad arguments or malformed input files.
struct InputError : Error {
  using Error::Error;
};

/// Field evaluation produced a non-finite value (overflow).
struct FieldOverflowError : Error {
  using Error::Error;
};

/// Time integration failed (max steps exceeded, step underflow, overflow).
struct IntegrationError : Error {
  using Error::Error;
};

/// Winding-number certification failed.
struct WindingError : Error {
  enum class Kind { PoleTooClose, BudgetExhausted, InconsistentTurnSum, NotClosed, StrictModeRefinementNeeded };
  Kind kind;
  WindingError(Kind k, const std::string& msg) : Error(msg), kind(k) {}
};

/// Normalization denominator dropped below its floor.
struct DenominatorError : Error {
  using Error::Error;
};

/// Control inequality |grad G| <= xi(G) violated, or xi not positive.
struct ControlError : Error {
  using Error::Error;
};

/// Rouche radius search exhausted its schedule.
struct RadiusSearchError : Error {
  using Error::Error;
};

}  // namespace pwind

#endif
