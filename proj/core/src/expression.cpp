#include "petrisim/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "petrisim/report.hpp"

namespace petrisim {

namespace {

bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0 || c == '\\';
}

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_';
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

CompareOp compare_op(BinaryOp op) {
  switch (op) {
    case BinaryOp::Eq: return CompareOp::Eq;
    case BinaryOp::Ne: return CompareOp::Ne;
    case BinaryOp::Lt: return CompareOp::Lt;
    case BinaryOp::Le: return CompareOp::Le;
    case BinaryOp::Gt: return CompareOp::Gt;
    case BinaryOp::Ge: return CompareOp::Ge;
    default: break;
  }
  throw Error(ErrorCode::ParseError, "not a comparison operator");
}

ExprPtr make(Expression::Literal node) {
  return std::make_shared<Expression>(Expression{std::move(node)});
}
ExprPtr make(Expression::TokenRef node) {
  return std::make_shared<Expression>(Expression{std::move(node)});
}
ExprPtr make(Expression::Negate node) {
  return std::make_shared<Expression>(Expression{std::move(node)});
}
ExprPtr make(Expression::Binary node) {
  return std::make_shared<Expression>(Expression{std::move(node)});
}
ExprPtr make(Expression::Conditional node) {
  return std::make_shared<Expression>(Expression{std::move(node)});
}

struct Parser {
  std::string_view text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError("expected " + expected, pos);
  }

  bool at_end() {
    skip_space();
    return pos >= text.size();
  }

  void skip_space() {
    while (pos < text.size() && is_space(text[pos])) ++pos;
  }

  bool consume(char c) {
    skip_space();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  std::string peek_word() {
    skip_space();
    if (pos >= text.size() || !is_ident_start(text[pos])) return {};
    std::size_t end = pos;
    while (end < text.size() && is_ident_char(text[end])) ++end;
    return std::string(text.substr(pos, end - pos));
  }

  bool consume_word(std::string_view word) {
    if (peek_word() != word) return false;
    pos += word.size();
    return true;
  }

  ExprPtr parse() {
    ExprPtr expr = expression();
    skip_space();
    if (pos < text.size()) fail("end of expression");
    return expr;
  }

  ExprPtr expression() {
    if (consume_word("if")) {
      Expression::Conditional node;
      node.condition = expression();
      if (!consume_word("then")) fail("'then'");
      node.then_branch = expression();
      if (!consume_word("else")) fail("'else'");
      node.else_branch = expression();
      return make(std::move(node));
    }
    return comparison();
  }

  ExprPtr comparison() {
    ExprPtr lhs = sum();
    while (true) {
      skip_space();
      std::size_t start = pos;
      while (pos < text.size() &&
             (text[pos] == '=' || text[pos] == '!' || text[pos] == '<' ||
              text[pos] == '>')) {
        ++pos;
      }
      std::string_view op = text.substr(start, pos - start);
      if (op.empty()) return lhs;
      BinaryOp binary;
      if (op == "==") binary = BinaryOp::Eq;
      else if (op == "!=") binary = BinaryOp::Ne;
      else if (op == "<") binary = BinaryOp::Lt;
      else if (op == "<=") binary = BinaryOp::Le;
      else if (op == ">") binary = BinaryOp::Gt;
      else if (op == ">=") binary = BinaryOp::Ge;
      else {
        throw ParseError("unknown comparison operator '" + std::string(op) +
                             "'",
                         start, ErrorCode::UnknownOperator);
      }
      // rhs parsed into a local first: a throw inside a partially built
      // aggregate temporary leaks the moved-in lhs under gcc
      ExprPtr rhs = sum();
      lhs = make(Expression::Binary{binary, std::move(lhs), std::move(rhs)});
    }
  }

  ExprPtr sum() {
    ExprPtr lhs = term();
    while (true) {
      if (consume('+')) {
        ExprPtr rhs = term();
        lhs = make(
            Expression::Binary{BinaryOp::Add, std::move(lhs), std::move(rhs)});
      } else if (consume('-')) {
        ExprPtr rhs = term();
        lhs = make(
            Expression::Binary{BinaryOp::Sub, std::move(lhs), std::move(rhs)});
      } else {
        return lhs;
      }
    }
  }

  ExprPtr term() {
    ExprPtr lhs = factor();
    while (true) {
      if (consume('*')) {
        ExprPtr rhs = factor();
        lhs = make(
            Expression::Binary{BinaryOp::Mul, std::move(lhs), std::move(rhs)});
      } else if (consume('/')) {
        ExprPtr rhs = factor();
        lhs = make(
            Expression::Binary{BinaryOp::Div, std::move(lhs), std::move(rhs)});
      } else {
        return lhs;
      }
    }
  }

  ExprPtr factor() {
    skip_space();
    if (consume('-')) return make(Expression::Negate{factor()});
    if (consume('(')) {
      ExprPtr inner = expression();
      if (!consume(')')) fail("')'");
      return inner;
    }
    if (pos < text.size() &&
        (std::isdigit(static_cast<unsigned char>(text[pos])) != 0 ||
         text[pos] == '.')) {
      return make(Expression::Literal{number()});
    }
    std::string word = peek_word();
    if (word.empty()) fail("a number, token reference or '('");
    if (word == "if" || word == "then" || word == "else") {
      fail("a value, not keyword '" + word + "'");
    }
    pos += word.size();
    Expression::TokenRef ref;
    ref.place = std::move(word);
    if (!consume('.')) fail("'.' after place name");
    skip_space();
    std::string token = peek_word();
    if (token.empty()) fail("token name");
    pos += token.size();
    ref.token = std::move(token);
    return make(std::move(ref));
  }

  double number() {
    std::size_t start = pos;
    while (pos < text.size()) {
      char c = text[pos];
      if (std::isdigit(static_cast<unsigned char>(c)) != 0 || c == '.') {
        ++pos;
      } else if ((c == 'e' || c == 'E') && pos > start) {
        ++pos;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
          ++pos;
        }
      } else {
        break;
      }
    }
    double value = 0;
    auto result =
        std::from_chars(text.data() + start, text.data() + pos, value);
    if (result.ec != std::errc() || result.ptr != text.data() + pos) {
      pos = start;
      fail("number");
    }
    return value;
  }
};

}  // namespace

const char* to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
  }
  return "?";
}

ExprPtr parse_expression(std::string_view text) {
  Parser parser{text};
  return parser.parse();
}

double eval_expression(const Expression& expr, const StateView& state) {
  struct Visitor {
    const StateView& state;

    double operator()(const Expression::Literal& node) const {
      return node.value;
    }
    double operator()(const Expression::TokenRef& node) const {
      return state.count(node.place, node.token);
    }
    double operator()(const Expression::Negate& node) const {
      return -eval_expression(*node.operand, state);
    }
    double operator()(const Expression::Binary& node) const {
      double lhs = eval_expression(*node.lhs, state);
      double rhs = eval_expression(*node.rhs, state);
      switch (node.op) {
        case BinaryOp::Add: return lhs + rhs;
        case BinaryOp::Sub: return lhs - rhs;
        case BinaryOp::Mul: return lhs * rhs;
        case BinaryOp::Div:
          if (rhs == 0) {
            throw Error(ErrorCode::DivisionByZero, "division by zero");
          }
          return lhs / rhs;
        default:
          return compare(compare_op(node.op), lhs, rhs) ? 1.0 : 0.0;
      }
    }
    double operator()(const Expression::Conditional& node) const {
      return eval_expression(*node.condition, state) != 0
                 ? eval_expression(*node.then_branch, state)
                 : eval_expression(*node.else_branch, state);
    }
  };
  return std::visit(Visitor{state}, expr.node);
}

std::string format_expression(const Expression& expr) {
  struct Visitor {
    std::string operator()(const Expression::Literal& node) const {
      return format_double(node.value);
    }
    std::string operator()(const Expression::TokenRef& node) const {
      return node.place + "." + node.token;
    }
    std::string operator()(const Expression::Negate& node) const {
      return "(-" + format_expression(*node.operand) + ")";
    }
    std::string operator()(const Expression::Binary& node) const {
      return "(" + format_expression(*node.lhs) + " " + to_string(node.op) +
             " " + format_expression(*node.rhs) + ")";
    }
    std::string operator()(const Expression::Conditional& node) const {
      return "(if " + format_expression(*node.condition) + " then " +
             format_expression(*node.then_branch) + " else " +
             format_expression(*node.else_branch) + ")";
    }
  };
  return std::visit(Visitor{}, expr.node);
}

std::vector<std::pair<std::string, std::string>> expression_refs(
    const Expression& expr) {
  std::vector<std::pair<std::string, std::string>> refs;
  struct Visitor {
    std::vector<std::pair<std::string, std::string>>& refs;

    void operator()(const Expression::Literal&) const {}
    void operator()(const Expression::TokenRef& node) const {
      refs.emplace_back(node.place, node.token);
    }
    void operator()(const Expression::Negate& node) const {
      std::visit(*this, node.operand->node);
    }
    void operator()(const Expression::Binary& node) const {
      std::visit(*this, node.lhs->node);
      std::visit(*this, node.rhs->node);
    }
    void operator()(const Expression::Conditional& node) const {
      std::visit(*this, node.condition->node);
      std::visit(*this, node.then_branch->node);
      std::visit(*this, node.else_branch->node);
    }
  };
  std::visit(Visitor{refs}, expr.node);
  return refs;
}

}  // namespace petrisim
