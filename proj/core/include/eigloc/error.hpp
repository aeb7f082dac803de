#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace eigloc {

enum class ErrorCode {
  InvalidGraph,
  DuplicateEdge,
  NegativeWeight,
  IsolatedNode,
  AsymmetricFlow,
  NonpositivePopulation,
  MissingPopulation,
  DenseLimitExceeded,
  ConvergenceFailure,
  AllZeroSpectrum,
  NotNormalized,
  EmptySubset,
  InvalidArgument,
  InvalidSpec,
  UnequalBeadSizes,
  DisconnectedGraph,
  DisconnectedSubgraph,
  SubsetTooSmall,
  SizeMismatch,
  CurveTooShort,
  MissingLabels,
  ParseError,
  IoError,
};

/// Coarse classification used by the CLI to choose an exit status.
enum class ErrorCategory { Input, Numerical };

std::string_view to_string(ErrorCode code);
ErrorCategory category(ErrorCode code);

/// Single exception type for the library. The code identifies the failure;
/// `index` carries the node, rank or line number when one applies.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> index = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

}  // namespace eigloc
