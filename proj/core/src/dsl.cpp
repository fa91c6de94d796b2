#include "petrisim/dsl.hpp"

#include <cctype>
#include <charconv>
#include <string>

#include "petrisim/report.hpp"

namespace petrisim {

namespace {

bool is_space(char c) {
  // Backslash line continuations inside spec strings count as whitespace.
  return std::isspace(static_cast<unsigned char>(c)) != 0 || c == '\\';
}

bool is_operator_char(char c) {
  return c == '=' || c == '!' || c == '<' || c == '>';
}

// Scanner over one field of a spec string. `base` is the field's byte
// offset within the original spec so errors point into the user's text.
struct Cursor {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t base = 0;

  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError("expected " + expected, base + pos);
  }

  bool at_end() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }

  void skip_space() {
    while (!at_end() && is_space(peek())) ++pos;
  }

  void expect(char c, const std::string& what) {
    skip_space();
    if (at_end() || peek() != c) fail(what);
    ++pos;
  }

  void expect_arrow() {
    skip_space();
    if (pos + 1 >= text.size() || text[pos] != '-' || text[pos + 1] != '>') {
      fail("'->'");
    }
    pos += 2;
  }

  void expect_end(const std::string& what) {
    skip_space();
    if (!at_end()) fail(what);
  }

  // A name runs until whitespace, '.', ';', an operator char, a paren, or a
  // "->" arrow.
  std::string name(const std::string& what) {
    skip_space();
    std::size_t start = pos;
    while (!at_end()) {
      char c = peek();
      if (is_space(c) || c == '.' || c == ';' || c == '(' || c == ')' ||
          is_operator_char(c)) {
        break;
      }
      if (c == '-' && pos + 1 < text.size() && text[pos + 1] == '>') break;
      ++pos;
    }
    if (pos == start) fail(what);
    return std::string(text.substr(start, pos - start));
  }

  double number(const std::string& what) {
    skip_space();
    std::size_t start = pos;
    if (!at_end() && (peek() == '+' || peek() == '-')) ++pos;
    while (!at_end()) {
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        ++pos;
      } else if ((c == 'e' || c == 'E') && pos > start) {
        ++pos;
        if (!at_end() && (peek() == '+' || peek() == '-')) ++pos;
      } else {
        break;
      }
    }
    double value = 0;
    auto result = std::from_chars(text.data() + start, text.data() + pos,
                                  value);
    if (result.ec != std::errc() || result.ptr != text.data() + pos ||
        pos == start) {
      pos = start;
      fail(what);
    }
    return value;
  }

  long long positive_integer(const std::string& what) {
    skip_space();
    std::size_t start = pos;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      ++pos;
    }
    long long value = 0;
    auto result =
        std::from_chars(text.data() + start, text.data() + pos, value);
    if (result.ec != std::errc() || pos == start || value < 1) {
      pos = start;
      fail(what);
    }
    return value;
  }

  CompareOp comparator() {
    skip_space();
    std::size_t start = pos;
    while (!at_end() && is_operator_char(peek())) ++pos;
    std::string_view op = text.substr(start, pos - start);
    if (op == "==") return CompareOp::Eq;
    if (op == "!=") return CompareOp::Ne;
    if (op == "<") return CompareOp::Lt;
    if (op == "<=") return CompareOp::Le;
    if (op == ">") return CompareOp::Gt;
    if (op == ">=") return CompareOp::Ge;
    if (op.empty()) fail("comparison operator");
    throw ParseError("unknown comparison operator '" + std::string(op) + "'",
                     base + start, ErrorCode::UnknownOperator);
  }
};

TransitionArc parse_arc_within(Cursor cursor) {
  TransitionArc arc;
  arc.source_place = cursor.name("source place name");
  cursor.expect('.', "'.' after source place");
  arc.source_token = cursor.name("source token name");
  cursor.expect_arrow();
  arc.dest_place = cursor.name("destination place name");
  cursor.expect('.', "'.' after destination place");
  arc.dest_token = cursor.name("destination token name");
  cursor.expect_end("end of arc");
  return arc;
}

Condition parse_condition_within(Cursor cursor) {
  Condition cond;
  cond.place = cursor.name("place name");
  cursor.expect('.', "'.' after place name");
  cond.token = cursor.name("token name");
  cond.op = cursor.comparator();
  cond.threshold = cursor.number("condition limit");
  cursor.expect_end("end of condition");
  return cond;
}

struct Field {
  std::string_view text;
  std::size_t offset;

  Cursor cursor() const { return Cursor{text, 0, offset}; }
};

std::vector<Field> split_fields(std::string_view spec) {
  std::vector<Field> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= spec.size(); ++i) {
    if (i == spec.size() || spec[i] == ';') {
      fields.push_back(Field{spec.substr(start, i - start), start});
      start = i + 1;
    }
  }
  return fields;
}

double non_negative(Cursor cursor, const std::string& what) {
  double value = cursor.number(what);
  if (value < 0) cursor.fail("non-negative " + what);
  cursor.expect_end("end of " + what + " field");
  return value;
}

long long integer_field(Cursor cursor, const std::string& what) {
  long long value = cursor.positive_integer(what);
  cursor.expect_end("end of " + what + " field");
  return value;
}

void require_specs(RuleKind kind, const std::vector<std::string>& specs) {
  if (specs.empty()) {
    throw Error(ErrorCode::ArityError,
                std::string(to_string(kind)) + " rule needs at least one spec");
  }
}

void require_fields(RuleKind kind, const std::vector<Field>& fields,
                    std::size_t expected) {
  if (fields.size() != expected) {
    throw Error(ErrorCode::ArityError,
                std::string(to_string(kind)) + " spec takes " +
                    std::to_string(expected) + " ';'-separated fields, got " +
                    std::to_string(fields.size()));
  }
}

RuleBody parse_step(const std::vector<std::string>& specs) {
  StepRule rule;
  for (const std::string& spec : specs) {
    auto fields = split_fields(spec);
    require_fields(RuleKind::Step, fields, 2);
    StepArc entry;
    entry.arc = parse_arc_within(fields[0].cursor());
    entry.amount = non_negative(fields[1].cursor(), "amount");
    rule.arcs.push_back(std::move(entry));
  }
  return rule;
}

RuleBody parse_ratio(const std::vector<std::string>& specs) {
  RatioRule rule;
  for (const std::string& spec : specs) {
    auto fields = split_fields(spec);
    require_fields(RuleKind::Ratio, fields, 4);
    RatioArc entry;
    entry.arc = parse_arc_within(fields[0].cursor());
    entry.ratio = fields[1].cursor().number("ratio");
    if (entry.ratio < 0 || entry.ratio > 1) {
      fields[1].cursor().fail("ratio between 0 and 1");
    }
    entry.stop = parse_condition_within(fields[2].cursor());
    entry.flush_target = non_negative(fields[3].cursor(), "flush target");
    rule.arcs.push_back(std::move(entry));
  }
  return rule;
}

RuleBody parse_delay(const std::vector<std::string>& specs) {
  DelayRule rule;
  for (const std::string& spec : specs) {
    auto fields = split_fields(spec);
    require_fields(RuleKind::Delay, fields, 3);
    DelayArc entry;
    entry.arc = parse_arc_within(fields[0].cursor());
    entry.amount = non_negative(fields[1].cursor(), "amount");
    entry.interval = integer_field(fields[2].cursor(), "interval");
    rule.arcs.push_back(std::move(entry));
  }
  return rule;
}

RuleBody parse_incubate(const std::vector<std::string>& specs) {
  if (specs.size() != 1) {
    throw Error(ErrorCode::ArityError,
                "incubate rule takes exactly one spec string");
  }
  auto fields = split_fields(specs.front());
  if (fields.size() < 3) {
    throw Error(ErrorCode::ArityError,
                "incubate spec takes at least 3 ';'-separated fields "
                "(timer; arc; guard), got " +
                    std::to_string(fields.size()));
  }
  IncubateRule rule;
  rule.timer_threshold = integer_field(fields[0].cursor(), "timer");
  rule.arcs.push_back(parse_arc_within(fields[1].cursor()));
  for (std::size_t i = 2; i < fields.size(); ++i) {
    rule.guards.push_back(parse_condition_within(fields[i].cursor()));
  }
  return rule;
}

RuleBody parse_function(const std::vector<std::string>& specs) {
  FunctionRule rule;
  enum class Section { Arcs, Name, Guards } section = Section::Arcs;
  for (const std::string& spec : specs) {
    bool is_arc = spec.find("->") != std::string_view::npos;
    bool is_condition =
        !is_arc && spec.find_first_of("=!<>") != std::string_view::npos;
    if (is_arc) {
      if (section != Section::Arcs) {
        throw Error(ErrorCode::ArityError,
                    "function rule arcs must precede the transfer function "
                    "name and guards");
      }
      rule.arcs.push_back(parse_arc_within(Cursor{spec, 0, 0}));
    } else if (is_condition) {
      section = Section::Guards;
      rule.guards.push_back(parse_condition_within(Cursor{spec, 0, 0}));
    } else {
      if (section != Section::Arcs || !rule.function.empty()) {
        throw Error(ErrorCode::ArityError,
                    "function rule takes a single transfer function name "
                    "between its arcs and guards");
      }
      Cursor cursor{spec, 0, 0};
      rule.function = cursor.name("transfer function name");
      cursor.expect_end("end of transfer function name");
      section = Section::Name;
    }
  }
  if (rule.arcs.empty()) {
    throw Error(ErrorCode::ArityError, "function rule needs at least one arc");
  }
  if (rule.guards.empty()) {
    throw Error(ErrorCode::ArityError,
                "function rule needs at least one guard condition");
  }
  return rule;
}

}  // namespace

TransitionArc parse_arc(std::string_view text) {
  return parse_arc_within(Cursor{text, 0, 0});
}

Condition parse_condition(std::string_view text) {
  return parse_condition_within(Cursor{text, 0, 0});
}

RuleBody parse_rule_spec(RuleKind kind,
                         const std::vector<std::string>& specs) {
  require_specs(kind, specs);
  switch (kind) {
    case RuleKind::Step: return parse_step(specs);
    case RuleKind::Ratio: return parse_ratio(specs);
    case RuleKind::Delay: return parse_delay(specs);
    case RuleKind::Incubate: return parse_incubate(specs);
    case RuleKind::Function: return parse_function(specs);
  }
  throw Error(ErrorCode::UnknownKind, "unknown rule kind");
}

bool eval_condition(const Condition& cond, const StateView& state) {
  return compare(cond.op, state.count(cond.place, cond.token),
                 cond.threshold);
}

std::string format_arc(const TransitionArc& arc) {
  return arc.source_place + "." + arc.source_token + " -> " + arc.dest_place +
         "." + arc.dest_token;
}

std::string format_condition(const Condition& cond) {
  return cond.place + "." + cond.token + " " + to_string(cond.op) + " " +
         format_double(cond.threshold);
}

std::vector<std::string> format_rule_specs(const Rule& rule) {
  std::vector<std::string> specs;
  std::visit(
      [&specs](const auto& body) {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, StepRule>) {
          for (const StepArc& entry : body.arcs) {
            specs.push_back(format_arc(entry.arc) + "; " +
                            format_double(entry.amount));
          }
        } else if constexpr (std::is_same_v<T, RatioRule>) {
          for (const RatioArc& entry : body.arcs) {
            specs.push_back(format_arc(entry.arc) + "; " +
                            format_double(entry.ratio) + "; " +
                            format_condition(entry.stop) + "; " +
                            format_double(entry.flush_target));
          }
        } else if constexpr (std::is_same_v<T, DelayRule>) {
          for (const DelayArc& entry : body.arcs) {
            specs.push_back(format_arc(entry.arc) + "; " +
                            format_double(entry.amount) + "; " +
                            std::to_string(entry.interval));
          }
        } else if constexpr (std::is_same_v<T, IncubateRule>) {
          std::string spec = std::to_string(body.timer_threshold);
          for (const TransitionArc& arc : body.arcs) {
            spec += "; " + format_arc(arc);
          }
          for (const Condition& guard : body.guards) {
            spec += "; " + format_condition(guard);
          }
          specs.push_back(std::move(spec));
        } else if constexpr (std::is_same_v<T, FunctionRule>) {
          for (const TransitionArc& arc : body.arcs) {
            specs.push_back(format_arc(arc));
          }
          if (!body.function.empty()) specs.push_back(body.function);
          for (const Condition& guard : body.guards) {
            specs.push_back(format_condition(guard));
          }
        }
      },
      rule.body);
  return specs;
}

}  // namespace petrisim
