#pragma once

#include <stdexcept>

namespace fidelity {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or invalid observation data (CSV parsing, shape checks).
struct DataError : Error {
    using Error::Error;
};

// Rank-deficient design matrix in a least-squares fit.
struct RankError : Error {
    using Error::Error;
};

// Invalid configuration or argument values.
struct ConfigError : Error {
    using Error::Error;
};

// A pipeline stage failed; the message is prefixed with the stage name.
struct PipelineError : Error {
    using Error::Error;
};

}  // namespace fidelity
