#include "ownerscope/error.hpp"

namespace ownerscope {
namespace {

std::string format_message(ErrorKind kind, const std::string& message, long line) {
  std::string out = to_string(kind);
  if (line > 0) {
    out += " (line ";
    out += std::to_string(line);
    out += ")";
  }
  out += ": ";
  out += message;
  return out;
}

}  // namespace

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedRecord: return "malformed_record";
    case ErrorKind::EmptyInput: return "empty_input";
    case ErrorKind::SchemaViolation: return "schema_violation";
    case ErrorKind::SeverityOutOfRange: return "severity_out_of_range";
    case ErrorKind::DuplicateName: return "duplicate_name";
    case ErrorKind::IoError: return "io_error";
    case ErrorKind::InvalidThreshold: return "invalid_threshold";
    case ErrorKind::ComponentUnknown: return "component_unknown";
    case ErrorKind::NegativeSpan: return "negative_span";
    case ErrorKind::LengthMismatch: return "length_mismatch";
    case ErrorKind::TooFewSamples: return "too_few_samples";
    case ErrorKind::ShapeMismatch: return "shape_mismatch";
    case ErrorKind::ZeroVector: return "zero_vector";
    case ErrorKind::EmptySample: return "empty_sample";
    case ErrorKind::NotSymmetric: return "not_symmetric";
    case ErrorKind::InvalidLambda: return "invalid_lambda";
    case ErrorKind::UnknownColumn: return "unknown_column";
    case ErrorKind::RankDeficient: return "rank_deficient";
    case ErrorKind::SingleClass: return "single_class";
    case ErrorKind::NoSeverityRows: return "no_severity_rows";
    case ErrorKind::SingleGroup: return "single_group";
    case ErrorKind::PoolTooSmall: return "pool_too_small";
    case ErrorKind::NetworkError: return "network_error";
    case ErrorKind::AuthError: return "auth_error";
    case ErrorKind::RateLimited: return "rate_limited";
  }
  return "unknown_error";
}

Error::Error(ErrorKind kind, const std::string& message, long line)
    : std::runtime_error(format_message(kind, message, line)),
      kind_(kind),
      line_(line),
      detail_(message) {}

int Error::exit_code() const {
  switch (kind_) {
    case ErrorKind::NetworkError:
    case ErrorKind::AuthError:
    case ErrorKind::RateLimited:
      return 3;
    case ErrorKind::SingleClass:
    case ErrorKind::NoSeverityRows:
    case ErrorKind::SingleGroup:
    case ErrorKind::PoolTooSmall:
      return 4;
    default:
      return 2;
  }
}

void raise(ErrorKind kind, const std::string& message, long line) {
  throw Error(kind, message, line);
}

}  // namespace ownerscope
