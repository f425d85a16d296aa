#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kovan/poly.hpp"

namespace kovan {

enum class ParseErrorKind {
  Syntax,
  UnknownVariable,
  NonPolynomial,
  DivisionByZero,
  MissingField,
  DuplicateVariable,
  OddVariableCountForHamiltonian,
  InvalidValue,
};

std::string_view to_string(ParseErrorKind kind);

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::string message, int line = 0, int column = 0);

  ParseErrorKind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& detail() const { return detail_; }

 private:
  ParseErrorKind kind_;
  int line_;
  int column_;
  std::string detail_;
};

/// Parses a polynomial expression over `variables`.
///
/// Grammar: integer literals, `+ - * /`, `^` with a non-negative integer
/// exponent, parentheses, unary sign. Division is only allowed by a nonzero
/// constant, so `3/4*x` and `p^2/2` are fine but `1/x` is not. Implicit
/// multiplication (`2x`) and floating-point literals are rejected.
/// Line numbers in errors are 1 and columns are 1-based offsets into `src`.
Poly parse_expression(std::string_view src, const std::vector<std::string>& variables);

struct VariableDecl {
  std::string name;
  std::optional<int> weight;
};

using SeedValue = std::variant<Rational, double>;

struct ProblemOptions {
  double tolerance = 1e-12;
  int newton_iterations = 200;
  int max_weight = 12;
  std::optional<unsigned long long> rng_seed;
  std::string format = "text";
};

/// A problem file after parsing and validation. Either the field components or
/// the Hamiltonian is set for F (and likewise for the optional G).
struct ProblemSpec {
  std::string name;
  std::vector<VariableDecl> variables;
  std::vector<Poly> field_f;
  std::optional<Poly> hamiltonian_f;
  std::vector<Poly> field_g;
  std::optional<Poly> hamiltonian_g;
  std::vector<std::vector<SeedValue>> seeds;
  std::optional<int> truncation;
  ProblemOptions options;
  /// Expression sources keyed as in the file ("F.1", "H_G", ...), in file order.
  std::vector<std::pair<std::string, std::string>> sources;

  std::vector<std::string> variable_names() const;
  bool has_g() const { return !field_g.empty() || hamiltonian_g.has_value(); }
  bool declares_weights() const;
};

/// Parses the key/value problem format (see docs/problem_format.md).
ProblemSpec parse_problem(std::string_view text);

}  // namespace kovan
