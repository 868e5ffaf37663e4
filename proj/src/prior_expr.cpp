#include "simplexint/prior_expr.hpp"

#include <array>
#include <charconv>
#include <cctype>
#include <cmath>
#include <utility>

namespace simplexint {
namespace {

using Op = PriorExpression::Op;

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, comma, end };

struct Token {
  Tok kind;
  std::size_t column;  // 1-based
  std::string_view text;
  double number = 0.0;
};

struct FunctionInfo {
  std::string_view name;
  Op op;
  int arity;
};

constexpr std::array<FunctionInfo, 5> kFunctions = {{
    {"exp", Op::exp, 1},
    {"log", Op::log, 1},
    {"sqrt", Op::sqrt, 1},
    {"abs", Op::abs, 1},
    {"pow", Op::pow, 2},
}};

const FunctionInfo* find_function(std::string_view name) {
  for (const auto& f : kFunctions) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

std::string_view function_name(Op op) {
  for (const auto& f : kFunctions) {
    if (f.op == op) return f.name;
  }
  return "?";
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::end:
      return "end of input";
    case Tok::number:
      return "number '" + std::string(t.text) + "'";
    case Tok::ident:
      return "identifier '" + std::string(t.text) + "'";
    default:
      return "'" + std::string(t.text) + "'";
  }
}

const std::vector<std::string> kOperandStart = {"number", "identifier", "'('", "'-'"};
const std::vector<std::string> kAfterOperand = {"'+'", "'-'", "'*'", "'/'", "'^'"};

double power(double base, double exponent) {
  if (base > 0.0) return std::pow(base, exponent);
  if (base == 0.0) {
    if (exponent > 0.0) return 0.0;
    if (exponent == 0.0) return 1.0;
    throw EvaluationError("0 raised to a negative power");
  }
  // A negative base is allowed only with an integer exponent, where the
  // result stays real: (p1 - 0.3)^2 is an ordinary bump prior.
  if (exponent == std::nearbyint(exponent)) return std::pow(base, exponent);
  throw EvaluationError("negative base with a non-integer exponent");
}

}  // namespace

SyntaxError::SyntaxError(const std::string& message, std::size_t column,
                         std::vector<std::string> expected)
    : std::invalid_argument(message), column_(column), expected_(std::move(expected)) {}

class PriorParser {
 public:
  PriorParser(std::string_view src, const ParseLimits& limits) : src_(src), limits_(limits) {
    advance();
  }

  PriorExpression run() {
    PriorExpression e;
    e.source_ = std::string(src_);
    out_ = &e;
    e.root_ = parse_expr(0);
    if (tok_.kind != Tok::end) {
      std::vector<std::string> expected = kAfterOperand;
      expected.push_back("end of input");
      fail("unexpected " + describe(tok_), tok_.column, std::move(expected));
    }
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what, std::size_t column,
                         std::vector<std::string> expected = {}) {
    std::string msg = "syntax error at column " + std::to_string(column) + ": " + what;
    if (!expected.empty()) {
      msg += "; expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i != 0) msg += i + 1 == expected.size() ? " or " : ", ";
        msg += expected[i];
      }
    }
    throw SyntaxError(msg, column, std::move(expected));
  }

  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    const std::size_t column = pos_ + 1;
    if (pos_ >= src_.size()) {
      tok_ = {Tok::end, column, {}};
      return;
    }
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      lex_number(column);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_;
      }
      tok_ = {Tok::ident, column, src_.substr(start, pos_ - start)};
      return;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::plus; break;
      case '-': kind = Tok::minus; break;
      case '*': kind = Tok::star; break;
      case '/': kind = Tok::slash; break;
      case '^': kind = Tok::caret; break;
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      case ',': kind = Tok::comma; break;
      default:
        fail(std::string("unexpected character '") + c + "'", column);
    }
    tok_ = {kind, column, src_.substr(pos_, 1)};
    ++pos_;
  }

  void lex_number(std::size_t column) {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t count = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
        ++count;
      }
      return count;
    };
    std::size_t mantissa = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) fail("malformed number", column, {"digit"});
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) fail("malformed exponent", pos_ + 1, {"digit"});
    }
    const std::string_view text = src_.substr(start, pos_ - start);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
      fail("number '" + std::string(text) + "' is not representable", column);
    }
    tok_ = {Tok::number, column, text, value};
  }

  std::int32_t add_node(PriorExpression::Node node, std::size_t column) {
    if (out_->nodes_.size() >= limits_.max_nodes) {
      fail("expression exceeds " + std::to_string(limits_.max_nodes) + " nodes", column);
    }
    out_->nodes_.push_back(node);
    return static_cast<std::int32_t>(out_->nodes_.size() - 1);
  }

  void enter(std::size_t depth) {
    if (depth > limits_.max_depth) {
      fail("expression nested deeper than " + std::to_string(limits_.max_depth), tok_.column);
    }
  }

  std::int32_t parse_expr(std::size_t depth) {
    enter(depth);
    std::int32_t lhs = parse_term(depth);
    while (tok_.kind == Tok::plus || tok_.kind == Tok::minus) {
      const Op op = tok_.kind == Tok::plus ? Op::add : Op::subtract;
      const std::size_t column = tok_.column;
      advance();
      const std::int32_t rhs = parse_term(depth);
      lhs = add_node({op, 0.0, 0, lhs, rhs}, column);
    }
    return lhs;
  }

  // depth counts parentheses, function calls and chained powers.
  std::int32_t parse_term(std::size_t depth) {
    std::int32_t lhs = parse_factor(depth);
    while (tok_.kind == Tok::star || tok_.kind == Tok::slash) {
      const Op op = tok_.kind == Tok::star ? Op::multiply : Op::divide;
      const std::size_t column = tok_.column;
      advance();
      const std::int32_t rhs = parse_factor(depth);
      lhs = add_node({op, 0.0, 0, lhs, rhs}, column);
    }
    return lhs;
  }

  std::int32_t parse_factor(std::size_t depth) {
    enter(depth);
    const std::int32_t base = parse_unary(depth);
    if (tok_.kind != Tok::caret) return base;
    const std::size_t column = tok_.column;
    advance();
    const std::int32_t exponent = parse_factor(depth + 1);
    return add_node({Op::power, 0.0, 0, base, exponent}, column);
  }

  std::int32_t parse_unary(std::size_t depth) {
    if (tok_.kind == Tok::minus) {
      const std::size_t column = tok_.column;
      advance();
      const std::int32_t operand = parse_atom(depth, false);
      return add_node({Op::negate, 0.0, 0, operand, -1}, column);
    }
    return parse_atom(depth, true);
  }

  std::int32_t parse_atom(std::size_t depth, bool minus_allowed) {
    const Token t = tok_;
    switch (t.kind) {
      case Tok::number:
        advance();
        return add_node({Op::number, t.number, 0, -1, -1}, t.column);
      case Tok::lparen: {
        advance();
        const std::int32_t inner = parse_expr(depth + 1);
        expect(Tok::rparen, "')'");
        return inner;
      }
      case Tok::ident:
        return parse_identifier(depth);
      default: {
        std::vector<std::string> expected = kOperandStart;
        if (!minus_allowed) expected.pop_back();
        fail("unexpected " + describe(t), t.column, std::move(expected));
      }
    }
  }

  std::int32_t parse_identifier(std::size_t depth) {
    const Token t = tok_;
    const std::string_view name = t.text;
    advance();

    if (name.size() > 1 && name[0] == 'p' &&
        name.find_first_not_of("0123456789", 1) == std::string_view::npos) {
      std::uint64_t index = 0;
      const auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), index);
      if (ec != std::errc() || index == 0 || index > (1u << 24)) {
        fail("bin variable '" + std::string(name) + "' must be p1, p2, ...", t.column);
      }
      if (tok_.kind == Tok::lparen) {
        fail("'" + std::string(name) + "' is a variable, not a function", tok_.column);
      }
      out_->required_bins_ = std::max<std::size_t>(out_->required_bins_, index);
      return add_node({Op::variable, 0.0, static_cast<std::uint32_t>(index - 1), -1, -1},
                      t.column);
    }

    const FunctionInfo* fn = find_function(name);
    if (fn == nullptr) {
      fail("unknown identifier '" + std::string(name) +
               "' (variables are p1..pn; functions are exp, log, sqrt, abs, pow)",
           t.column);
    }
    expect(Tok::lparen, "'('");
    std::array<std::int32_t, 2> args{-1, -1};
    int count = 0;
    for (;;) {
      args[static_cast<std::size_t>(count)] = parse_expr(depth + 1);
      ++count;
      if (tok_.kind != Tok::comma) break;
      if (count == fn->arity) {
        fail(std::string(fn->name) + " takes " + std::to_string(fn->arity) + " argument(s)",
             tok_.column, {"')'"});
      }
      advance();
    }
    if (count != fn->arity) {
      fail(std::string(fn->name) + " takes " + std::to_string(fn->arity) + " argument(s)",
           tok_.column);
    }
    expect(Tok::rparen, "')'");
    return add_node({fn->op, 0.0, 0, args[0], args[1]}, t.column);
  }

  void expect(Tok kind, const std::string& label) {
    if (tok_.kind != kind) {
      std::vector<std::string> expected = {label};
      if (kind == Tok::rparen) {
        expected.insert(expected.begin(), kAfterOperand.begin(), kAfterOperand.end());
      }
      fail("unexpected " + describe(tok_), tok_.column, std::move(expected));
    }
    advance();
  }

  std::string_view src_;
  ParseLimits limits_;
  std::size_t pos_ = 0;
  Token tok_{Tok::end, 1, {}};
  PriorExpression* out_ = nullptr;
};

PriorExpression PriorExpression::parse(std::string_view source, const ParseLimits& limits) {
  return PriorParser(source, limits).run();
}

void PriorExpression::check_bins(std::size_t n) const {
  if (required_bins_ > n) {
    throw std::invalid_argument("prior references p" + std::to_string(required_bins_) +
                                " but there are only " + std::to_string(n) + " bins");
  }
}

double PriorExpression::evaluate(std::span<const double> p) const {
  check_bins(p.size());
  const double v = eval_node(root_, p);
  if (v < 0.0) {
    throw EvaluationError("prior evaluated to a negative value " + std::to_string(v));
  }
  return v;
}

double PriorExpression::eval_node(std::int32_t index, std::span<const double> p) const {
  const Node& node = nodes_[static_cast<std::size_t>(index)];
  auto arg = [&](std::int32_t child) { return eval_node(child, p); };
  double v = 0.0;
  switch (node.op) {
    case Op::number:
      return node.value;
    case Op::variable:
      v = p[node.variable];
      break;
    case Op::negate:
      v = -arg(node.lhs);
      break;
    case Op::add:
      v = arg(node.lhs) + arg(node.rhs);
      break;
    case Op::subtract:
      v = arg(node.lhs) - arg(node.rhs);
      break;
    case Op::multiply:
      v = arg(node.lhs) * arg(node.rhs);
      break;
    case Op::divide: {
      const double num = arg(node.lhs);
      const double den = arg(node.rhs);
      if (den == 0.0) throw EvaluationError("division by zero");
      v = num / den;
      break;
    }
    case Op::power:
    case Op::pow: {
      const double base = arg(node.lhs);
      v = power(base, arg(node.rhs));
      break;
    }
    case Op::exp:
      v = std::exp(arg(node.lhs));
      break;
    case Op::log: {
      const double x = arg(node.lhs);
      if (!(x > 0.0)) throw EvaluationError("log of a non-positive value");
      v = std::log(x);
      break;
    }
    case Op::sqrt: {
      const double x = arg(node.lhs);
      if (x < 0.0) throw EvaluationError("sqrt of a negative value");
      v = std::sqrt(x);
      break;
    }
    case Op::abs:
      v = std::abs(arg(node.lhs));
      break;
  }
  if (!std::isfinite(v)) throw EvaluationError("non-finite intermediate value");
  return v;
}

std::string PriorExpression::to_string() const {
  std::string out;
  print_node(root_, out);
  return out;
}

void PriorExpression::print_node(std::int32_t index, std::string& out) const {
  const Node& node = nodes_[static_cast<std::size_t>(index)];
  auto binary = [&](char symbol) {
    out += '(';
    print_node(node.lhs, out);
    out += symbol;
    print_node(node.rhs, out);
    out += ')';
  };
  switch (node.op) {
    case Op::number: {
      std::array<char, 32> buf{};
      const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), node.value);
      out.append(buf.data(), ptr);
      return;
    }
    case Op::variable:
      out += 'p';
      out += std::to_string(node.variable + 1);
      return;
    case Op::negate:
      out += "(-";
      print_node(node.lhs, out);
      out += ')';
      return;
    case Op::add: return binary('+');
    case Op::subtract: return binary('-');
    case Op::multiply: return binary('*');
    case Op::divide: return binary('/');
    case Op::power: return binary('^');
    case Op::exp:
    case Op::log:
    case Op::sqrt:
    case Op::abs:
    case Op::pow:
      out += function_name(node.op);
      out += '(';
      print_node(node.lhs, out);
      if (node.rhs >= 0) {
        out += ',';
        print_node(node.rhs, out);
      }
      out += ')';
      return;
  }
}

}  // namespace simplexint
