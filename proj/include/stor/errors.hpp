#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stor {

enum class ErrorCode {
    UnknownEntity,
    UnknownNetwork,
    SelfLink,
    NoLink,
    FrozenGraph,
    TrustNotComputed,
    InvalidGeneratorParams,
    ZeroNormalizer,
    WeightSumViolation,
    DomainViolation,
    UnknownRule,
    EmptyAssignment,
    MissingAttribute,
    DisconnectedPath,
    CyclicPath,
    InvalidPolicy,
    EmptyCandidateSet,
    ZeroDenominator,
    EmptySet,
    InsufficientCandidates,
    InfeasibleAssignment,
    ParseError,
    InvalidConfig,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries a machine-checkable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// ParseError that remembers the offending 1-based line number (0 when unknown).
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message);

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace stor
