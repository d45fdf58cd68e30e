#include "stor/errors.hpp"

namespace stor {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::UnknownEntity: return "UnknownEntity";
    case ErrorCode::UnknownNetwork: return "UnknownNetwork";
    case ErrorCode::SelfLink: return "SelfLink";
    case ErrorCode::NoLink: return "NoLink";
    case ErrorCode::FrozenGraph: return "FrozenGraph";
    case ErrorCode::TrustNotComputed: return "TrustNotComputed";
    case ErrorCode::InvalidGeneratorParams: return "InvalidGeneratorParams";
    case ErrorCode::ZeroNormalizer: return "ZeroNormalizer";
    case ErrorCode::WeightSumViolation: return "WeightSumViolation";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::UnknownRule: return "UnknownRule";
    case ErrorCode::EmptyAssignment: return "EmptyAssignment";
    case ErrorCode::MissingAttribute: return "MissingAttribute";
    case ErrorCode::DisconnectedPath: return "DisconnectedPath";
    case ErrorCode::CyclicPath: return "CyclicPath";
    case ErrorCode::InvalidPolicy: return "InvalidPolicy";
    case ErrorCode::EmptyCandidateSet: return "EmptyCandidateSet";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::InsufficientCandidates: return "InsufficientCandidates";
    case ErrorCode::InfeasibleAssignment: return "InfeasibleAssignment";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code)
{
}

ParseError::ParseError(std::size_t line, const std::string& message)
    : Error(ErrorCode::ParseError,
            line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      line_(line)
{
}

}  // namespace stor
