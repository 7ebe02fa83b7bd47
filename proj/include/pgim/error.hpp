#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pgim {

/// Failure categories raised by the library.
enum class Errc {
    TooFewPoints,
    InvalidDimension,
    ConsecutiveDuplicatePoints,
    InvalidParameters,
    IndexOutOfRange,
    ParameterOutOfDomain,
    DimensionMismatch,
    OutOfBandWrite,
    ZeroDiagonal,
    PowerIterationStalled,
    SizeTooLargeForDense,
    NonpositiveDiagonal,
    MissingOmega,
    OmegaOutOfRange,
    DegenerateSpectrum,
    RhoOutOfRange,
    InsufficientHistory,
    ZeroError,
    MalformedLine,
    MixedDimensions,
    EmptyFile,
    IoError,
    InvalidArgument,
};

constexpr std::string_view to_string(Errc code) noexcept {
    switch (code) {
    case Errc::TooFewPoints: return "TooFewPoints";
    case Errc::InvalidDimension: return "InvalidDimension";
    case Errc::ConsecutiveDuplicatePoints: return "ConsecutiveDuplicatePoints";
    case Errc::InvalidParameters: return "InvalidParameters";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::ParameterOutOfDomain: return "ParameterOutOfDomain";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::OutOfBandWrite: return "OutOfBandWrite";
    case Errc::ZeroDiagonal: return "ZeroDiagonal";
    case Errc::PowerIterationStalled: return "PowerIterationStalled";
    case Errc::SizeTooLargeForDense: return "SizeTooLargeForDense";
    case Errc::NonpositiveDiagonal: return "NonpositiveDiagonal";
    case Errc::MissingOmega: return "MissingOmega";
    case Errc::OmegaOutOfRange: return "OmegaOutOfRange";
    case Errc::DegenerateSpectrum: return "DegenerateSpectrum";
    case Errc::RhoOutOfRange: return "RhoOutOfRange";
    case Errc::InsufficientHistory: return "InsufficientHistory";
    case Errc::ZeroError: return "ZeroError";
    case Errc::MalformedLine: return "MalformedLine";
    case Errc::MixedDimensions: return "MixedDimensions";
    case Errc::EmptyFile: return "EmptyFile";
    case Errc::IoError: return "IoError";
    case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Exception type thrown by every pgim operation.
///
/// `line()` is nonzero only for parse errors (1-based line number).
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what, std::size_t line = 0)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), line_(line) {}

    [[nodiscard]] Errc code() const noexcept { return code_; }
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    Errc code_;
    std::size_t line_;
};

}  // namespace pgim
