#include "eigloc/error.hpp"

namespace eigloc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::IsolatedNode: return "IsolatedNode";
    case ErrorCode::AsymmetricFlow: return "AsymmetricFlow";
    case ErrorCode::NonpositivePopulation: return "NonpositivePopulation";
    case ErrorCode::MissingPopulation: return "MissingPopulation";
    case ErrorCode::DenseLimitExceeded: return "DenseLimitExceeded";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::AllZeroSpectrum: return "AllZeroSpectrum";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::UnequalBeadSizes: return "UnequalBeadSizes";
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::DisconnectedSubgraph: return "DisconnectedSubgraph";
    case ErrorCode::SubsetTooSmall: return "SubsetTooSmall";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::CurveTooShort: return "CurveTooShort";
    case ErrorCode::MissingLabels: return "MissingLabels";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

ErrorCategory category(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConvergenceFailure:
    case ErrorCode::AllZeroSpectrum:
    case ErrorCode::NotNormalized:
    case ErrorCode::DenseLimitExceeded:
      return ErrorCategory::Numerical;
    default:
      return ErrorCategory::Input;
  }
}

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> index)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      index_(index) {}

}  // namespace eigloc
