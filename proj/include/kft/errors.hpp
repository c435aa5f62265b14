#pragma once

#include <stdexcept>
#include <string>

namespace kft {

// Error categories map onto CLI exit codes: usage errors are handled by the
// argument parser, DataError exits 2, NumericError exits 3.
enum class ErrorCode {
    MissingDirectory,
    MissingFile,
    UnreadableImage,
    CountMismatch,
    NonPositiveExtent,
    MalformedLine,
    MalformedResource,
    UnknownChannel,
    PathExitsCanvas,
    DistractorOverlap,
    DegenerateBox,
    ShapeMismatch,
    InvalidParameter,
    EmptyInput,
    WriteFailure,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

// Bad or inconsistent input data (files, annotations, resources).
class DataError : public Error {
public:
    using Error::Error;
};

// Invalid numeric state (non-finite values, bad parameters, shape mismatch).
class NumericError : public Error {
public:
    using Error::Error;
};

}  // namespace kft
