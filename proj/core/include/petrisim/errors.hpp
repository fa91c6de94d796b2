#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace petrisim {

enum class ErrorCode {
  DuplicatePlace,
  NegativeInitialCount,
  InvalidName,
  DuplicateFunction,
  DuplicateRule,
  UnknownKind,
  ParseError,
  ArityError,
  UnknownOperator,
  UnknownPlaceOrToken,
  UnresolvedFunction,
  NegativeTransfer,
  NonFiniteTransfer,
  DivisionByZero,
  EmptyHistory,
  DocumentSyntaxError,
  InvalidConfig,
  IoError,
};

const char* to_string(ErrorCode code);

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Raised while scanning rule specs, conditions, expressions or model text.
/// `offset` is the byte position within the text being parsed.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset,
             ErrorCode code = ErrorCode::ParseError)
      : Error(code, message + " at offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace petrisim
