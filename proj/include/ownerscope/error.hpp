#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ownerscope {

// Error taxonomy. exit_code() groups kinds into the CLI contract:
// 2 = input/validation, 3 = network, 4 = analysis-degenerate.
enum class ErrorKind {
  // ingest / validation
  MalformedRecord,
  EmptyInput,
  SchemaViolation,
  SeverityOutOfRange,
  DuplicateName,
  IoError,
  // metrics
  InvalidThreshold,
  ComponentUnknown,
  NegativeSpan,
  // stats
  LengthMismatch,
  TooFewSamples,
  ShapeMismatch,
  ZeroVector,
  EmptySample,
  NotSymmetric,
  InvalidLambda,
  UnknownColumn,
  RankDeficient,
  // analysis-degenerate
  SingleClass,
  NoSeverityRows,
  SingleGroup,
  PoolTooSmall,
  // network
  NetworkError,
  AuthError,
  RateLimited,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, long line = 0);

  ErrorKind kind() const { return kind_; }
  // 1-based line of the offending input record, 0 when not applicable.
  long line() const { return line_; }
  const std::string& detail() const { return detail_; }
  int exit_code() const;

  // Offending predictor columns (0-based), set for RankDeficient.
  std::vector<std::size_t> columns;

 private:
  ErrorKind kind_;
  long line_;
  std::string detail_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& message, long line = 0);

}  // namespace ownerscope
