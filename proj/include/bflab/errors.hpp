#pragma once

#include <stdexcept>
#include <string>

namespace bflab {

// Base class for all library errors. The CLI maps any Error to exit code 2.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Truth-table text/bytes do not match the expected length for the dimension.
struct LengthMismatch : Error {
    using Error::Error;
};

// A character outside the format's alphabet was encountered while parsing.
struct InvalidCharacter : Error {
    using Error::Error;
};

// A point index is outside [0, 2^n).
struct IndexOutOfRange : Error {
    using Error::Error;
};

// The requested dimension exceeds what the operation supports.
struct DimensionTooLarge : Error {
    using Error::Error;
};

// The dimension is outside the operation's accepted range.
struct InvalidDimension : Error {
    using Error::Error;
};

// A disturbance asked for more flips than there are truth-table positions.
struct TooManyFlips : Error {
    using Error::Error;
};

// A significance level outside (0, 1).
struct InvalidAlpha : Error {
    using Error::Error;
};

// Any other violated precondition (bad trial count, missing parameter, ...).
struct InvalidArgument : Error {
    using Error::Error;
};

} // namespace bflab
