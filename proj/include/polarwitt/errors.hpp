#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polarwitt {

/// Classification of domain failures; the CLI maps all of these to exit code 2.
enum class ErrorCode {
    InvalidArgument,
    OwnerMismatch,
    DegreeMismatch,
    LengthMismatch,
    Inhomogeneous,
    InadmissibleDegree,
    NotInCarrier,
    NotMultipliable,
    PolarOnly,
    BoundExceeded,
    NonIntegralDivision,
    NotFiniteDimensional,
    TypicalityMissing,
    RegradeUnsupported,
    WindowNotClosed,
    MalformedTree,
    ResourceLimit,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::OwnerMismatch: return "OwnerMismatch";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::Inhomogeneous: return "Inhomogeneous";
    case ErrorCode::InadmissibleDegree: return "InadmissibleDegree";
    case ErrorCode::NotInCarrier: return "NotInCarrier";
    case ErrorCode::NotMultipliable: return "NotMultipliable";
    case ErrorCode::PolarOnly: return "PolarOnly";
    case ErrorCode::BoundExceeded: return "BoundExceeded";
    case ErrorCode::NonIntegralDivision: return "NonIntegralDivision";
    case ErrorCode::NotFiniteDimensional: return "NotFiniteDimensional";
    case ErrorCode::TypicalityMissing: return "TypicalityMissing";
    case ErrorCode::RegradeUnsupported: return "RegradeUnsupported";
    case ErrorCode::WindowNotClosed: return "WindowNotClosed";
    case ErrorCode::MalformedTree: return "MalformedTree";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    DomainError(ErrorCode code, const std::string& what)
        : Error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Text input that does not conform to the grammar; positions are 1-based.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw DomainError(code, what); }

inline void require(bool ok, ErrorCode code, const std::string& what) {
    if (!ok) fail(code, what);
}

} // namespace polarwitt
