#include "petrisim/errors.hpp"

namespace petrisim {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicatePlace: return "DuplicatePlace";
    case ErrorCode::NegativeInitialCount: return "NegativeInitialCount";
    case ErrorCode::InvalidName: return "InvalidName";
    case ErrorCode::DuplicateFunction: return "DuplicateFunction";
    case ErrorCode::DuplicateRule: return "DuplicateRule";
    case ErrorCode::UnknownKind: return "UnknownKind";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ArityError: return "ArityError";
    case ErrorCode::UnknownOperator: return "UnknownOperator";
    case ErrorCode::UnknownPlaceOrToken: return "UnknownPlaceOrToken";
    case ErrorCode::UnresolvedFunction: return "UnresolvedFunction";
    case ErrorCode::NegativeTransfer: return "NegativeTransfer";
    case ErrorCode::NonFiniteTransfer: return "NonFiniteTransfer";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::EmptyHistory: return "EmptyHistory";
    case ErrorCode::DocumentSyntaxError: return "DocumentSyntaxError";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::IoError: return "IoError";
  }
  return "Error";
}

}  // namespace petrisim
