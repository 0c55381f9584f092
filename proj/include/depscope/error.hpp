#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace depscope {

enum class ErrorCode {
  MalformedCoordinate,
  MalformedTreeLine,
  DuplicateGa,
  EmptyInput,
  SchemaViolation,
  MalformedRow,
  DuplicateVersion,
  EmptyAffectedSet,
  UnknownVersion,
  MissingHistory,
  EmptyPool,
  InsufficientLibraries,
  InvalidArgument,
  Io,
};

std::string_view to_string(ErrorCode code);

// All toolkit failures are reported through this exception. `subject` holds
// the offending item (coordinate, JSON pointer, Ga, path); `line` is the
// 1-based input line for line-oriented formats, 0 otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string subject, std::size_t line = 0);

  ErrorCode code() const noexcept { return code_; }
  const std::string& subject() const noexcept { return subject_; }
  std::size_t line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::string subject_;
  std::size_t line_;
};

}  // namespace depscope
