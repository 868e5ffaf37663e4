#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace simplexint {

/// Grammar (version 1):
///
///   expr   := term (('+' | '-') term)*
///   term   := factor (('*' | '/') factor)*
///   factor := unary ('^' factor)?          right-associative
///   unary  := '-'? atom
///   atom   := number | ident | ident '(' args ')' | '(' expr ')'
///   args   := expr (',' expr)*
///
/// Identifiers are p1, p2, ... (1-based bin probabilities) or one of the
/// functions exp, log, sqrt, abs (one argument) and pow (two arguments).
/// Numbers are decimal with optional fraction and exponent.
inline constexpr int kPriorGrammarVersion = 1;

/// Malformed source text. `column` is 1-based; `expected` lists the tokens
/// that would have been accepted at that point.
class SyntaxError : public std::invalid_argument {
 public:
  SyntaxError(const std::string& message, std::size_t column, std::vector<std::string> expected);

  std::size_t column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t column_;
  std::vector<std::string> expected_;
};

/// Evaluation hit a domain edge (log of 0, negative base, division by
/// zero), a non-finite intermediate, or a negative final value.
class EvaluationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct ParseLimits {
  std::size_t max_nodes = 10000;
  std::size_t max_depth = 200;
};

/// An immutable parsed prior/weight function of the bin probabilities.
class PriorExpression {
 public:
  enum class Op : std::uint8_t {
    number, variable, negate, add, subtract, multiply, divide, power,
    exp, log, sqrt, abs, pow,
  };

  struct Node {
    Op op;
    double value = 0.0;          // number
    std::uint32_t variable = 0;  // variable: 0-based bin index
    std::int32_t lhs = -1;       // child node indices
    std::int32_t rhs = -1;

    friend bool operator==(const Node&, const Node&) = default;
  };

  /// Throws SyntaxError on malformed input, unknown functions, bad
  /// identifiers, wrong arity, or exceeded limits.
  static PriorExpression parse(std::string_view source, const ParseLimits& limits = {});

  const std::string& source() const { return source_; }
  std::span<const Node> nodes() const { return nodes_; }
  /// Number of bins the expression needs: the largest p index used, or 0.
  std::size_t required_bins() const { return required_bins_; }

  /// Throws std::invalid_argument if the expression references a bin
  /// beyond n.
  void check_bins(std::size_t n) const;

  /// Value at the probability vector p. Throws std::invalid_argument if p
  /// is too short and EvaluationError on domain errors or a negative
  /// result.
  double evaluate(std::span<const double> p) const;

  /// Canonical, fully parenthesized text that parses back to the same tree.
  std::string to_string() const;

  /// Structural equality of the trees; the source text is not compared.
  friend bool operator==(const PriorExpression& a, const PriorExpression& b) {
    return a.nodes_ == b.nodes_ && a.root_ == b.root_;
  }

 private:
  PriorExpression() = default;

  double eval_node(std::int32_t index, std::span<const double> p) const;
  void print_node(std::int32_t index, std::string& out) const;

  std::string source_;
  std::vector<Node> nodes_;
  std::int32_t root_ = -1;
  std::size_t required_bins_ = 0;

  friend class PriorParser;
};

}  // namespace simplexint
