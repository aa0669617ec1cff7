#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

// Error categories used across the library. Callers that care about the
// distinction catch the subtype; everything derives from Error.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad call arguments: overlapping qubit indices, duplicate targets, ...
struct ArgumentError : Error {
    using Error::Error;
};

// Size limits: qubit counts beyond the supported range.
struct CapacityError : Error {
    using Error::Error;
};

// Numerically invalid input, e.g. a non-unitary matrix.
struct ValidationError : Error {
    using Error::Error;
};

// Gate cannot be lowered to the hardware basis.
struct UnsupportedGateError : Error {
    using Error::Error;
};

// Malformed textual input (circuit files, coupling maps, configs).
struct ParseError : Error {
    using Error::Error;
};

// First-passage expectation does not exist (marked set unreachable).
struct DivergenceError : Error {
    using Error::Error;
};

// Chain did not mix below the threshold within the step cap.
struct NotMixingError : Error {
    using Error::Error;
};

}  // namespace qwalk
