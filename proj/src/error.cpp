#include "depscope/error.hpp"

namespace depscope {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedCoordinate: return "MalformedCoordinate";
    case ErrorCode::MalformedTreeLine: return "MalformedTreeLine";
    case ErrorCode::DuplicateGa: return "DuplicateGa";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::DuplicateVersion: return "DuplicateVersion";
    case ErrorCode::EmptyAffectedSet: return "EmptyAffectedSet";
    case ErrorCode::UnknownVersion: return "UnknownVersion";
    case ErrorCode::MissingHistory: return "MissingHistory";
    case ErrorCode::EmptyPool: return "EmptyPool";
    case ErrorCode::InsufficientLibraries: return "InsufficientLibraries";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

namespace {

std::string format_message(ErrorCode code, const std::string& subject,
                           std::size_t line) {
  std::string msg{to_string(code)};
  if (line != 0) msg += " at line " + std::to_string(line);
  if (!subject.empty()) msg += ": " + subject;
  return msg;
}

}  // namespace

Error::Error(ErrorCode code, std::string subject, std::size_t line)
    : std::runtime_error(format_message(code, subject, line)),
      code_(code),
      subject_(std::move(subject)),
      line_(line) {}

}  // namespace depscope
