#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace solarcast {

/// Base of every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent input data. CLI exit code 2.
struct DataError : Error {
    using Error::Error;
};

/// Numerical breakdown while fitting. CLI exit code 3.
struct NumericError : Error {
    using Error::Error;
};

struct MalformedRow : DataError {
    MalformedRow(std::size_t line, const std::string& detail)
        : DataError("malformed row at line " + std::to_string(line) + ": " + detail),
          line_number(line) {}
    std::size_t line_number;
};

struct NonMonotonicTimestamps : DataError { using DataError::DataError; };
struct EmptyFile : DataError { using DataError::DataError; };
struct EmptyInput : DataError { using DataError::DataError; };
struct EmptyResult : DataError { using DataError::DataError; };
struct WrongResolution : DataError { using DataError::DataError; };
struct DegenerateRange : DataError { using DataError::DataError; };
struct InsufficientData : DataError { using DataError::DataError; };
struct EmptySplit : DataError { using DataError::DataError; };
struct DimensionMismatch : DataError { using DataError::DataError; };
struct LengthMismatch : DataError { using DataError::DataError; };
struct NonFiniteInput : DataError { using DataError::DataError; };
struct NonFiniteEntries : DataError { using DataError::DataError; };
struct ZeroDenominator : DataError { using DataError::DataError; };
struct ConstantVector : DataError { using DataError::DataError; };
struct UntrainedModel : DataError { using DataError::DataError; };

struct NumericalFailure : NumericError { using NumericError::NumericError; };

struct DivergenceDetected : NumericError {
    DivergenceDetected(std::size_t epoch_index, const std::string& detail)
        : NumericError(detail + " (epoch " + std::to_string(epoch_index) + ")"),
          epoch(epoch_index) {}
    std::size_t epoch;
};

} // namespace solarcast
