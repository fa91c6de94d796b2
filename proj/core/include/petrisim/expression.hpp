#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "petrisim/types.hpp"

namespace petrisim {

// Arithmetic mini-language for declarative transfer functions:
//
//   expr    := 'if' expr 'then' expr 'else' expr | cmp
//   cmp     := sum ((== | != | < | <= | > | >=) sum)*
//   sum     := term (('+' | '-') term)*
//   term    := factor (('*' | '/') factor)*
//   factor  := '-' factor | NUMBER | place '.' token | '(' expr ')'
//
// Binary operators are left-associative; comparisons evaluate to 1 or 0.

enum class BinaryOp { Add, Sub, Mul, Div, Eq, Ne, Lt, Le, Gt, Ge };

const char* to_string(BinaryOp op);

struct Expression;
using ExprPtr = std::shared_ptr<const Expression>;

struct Expression {
  struct Literal {
    double value = 0;
  };
  struct TokenRef {
    std::string place;
    std::string token;
  };
  struct Negate {
    ExprPtr operand;
  };
  struct Binary {
    BinaryOp op;
    ExprPtr lhs;
    ExprPtr rhs;
  };
  struct Conditional {
    ExprPtr condition;
    ExprPtr then_branch;
    ExprPtr else_branch;
  };

  std::variant<Literal, TokenRef, Negate, Binary, Conditional> node;
};

ExprPtr parse_expression(std::string_view text);

/// Evaluates against a snapshot. Throws DivisionByZero on a zero divisor
/// and UnknownPlaceOrToken on an unresolved reference.
double eval_expression(const Expression& expr, const StateView& state);

/// Fully parenthesized rendering that re-parses to the same tree.
std::string format_expression(const Expression& expr);

/// Every `place.token` reference in the tree, for load-time validation.
std::vector<std::pair<std::string, std::string>> expression_refs(
    const Expression& expr);

}  // namespace petrisim
