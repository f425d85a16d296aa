#include "kovan/parse.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <set>

namespace kovan {

std::string_view to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::Syntax: return "SyntaxError";
    case ParseErrorKind::UnknownVariable: return "UnknownVariable";
    case ParseErrorKind::NonPolynomial: return "NonPolynomial";
    case ParseErrorKind::DivisionByZero: return "DivisionByZero";
    case ParseErrorKind::MissingField: return "MissingField";
    case ParseErrorKind::DuplicateVariable: return "DuplicateVariable";
    case ParseErrorKind::OddVariableCountForHamiltonian: return "OddVariableCountForHamiltonian";
    case ParseErrorKind::InvalidValue: return "InvalidValue";
  }
  return "ParseError";
}

namespace {

std::string format_message(ParseErrorKind kind, const std::string& message, int line, int column) {
  std::string out(to_string(kind));
  if (line > 0) out += " at " + std::to_string(line) + ":" + std::to_string(column);
  return out + ": " + message;
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

constexpr int kMaxDepth = 200;
constexpr unsigned kMaxExponent = 256;

class ExpressionParser {
 public:
  ExpressionParser(std::string_view src, const std::vector<std::string>& vars, int line, int column_offset)
      : src_(src), line_(line), col_offset_(column_offset) {
    for (const auto& v : vars) known_.insert(v);
    universe_ = vars;
  }

  Poly parse() {
    skip_ws();
    if (at_end()) fail(ParseErrorKind::Syntax, "empty expression");
    Poly p = sum();
    skip_ws();
    if (!at_end()) fail(ParseErrorKind::Syntax, std::string("unexpected character '") + peek() + "'");
    return p.over(merge_variables(universe_, p.variables()));
  }

 private:
  [[noreturn]] void fail(ParseErrorKind kind, const std::string& msg) const { fail_at(kind, msg, pos_); }
  [[noreturn]] void fail_at(ParseErrorKind kind, const std::string& msg, std::size_t pos) const {
    throw ParseError(kind, msg, line_ > 0 ? line_ : 1, col_offset_ + static_cast<int>(pos) + 1);
  }

  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return at_end() ? '\0' : src_[pos_]; }
  void skip_ws() {
    while (!at_end() && (src_[pos_] == ' ' || src_[pos_] == '\t')) ++pos_;
  }

  Poly sum() {
    Poly acc = term();
    for (;;) {
      skip_ws();
      const char c = peek();
      if (c != '+' && c != '-') return acc;
      ++pos_;
      Poly rhs = term();
      if (c == '+') acc += rhs; else acc -= rhs;
    }
  }

  Poly term() {
    Poly acc = factor();
    for (;;) {
      skip_ws();
      const char c = peek();
      if (c != '*' && c != '/') return acc;
      const std::size_t op_pos = pos_;
      ++pos_;
      Poly rhs = factor();
      if (c == '*') {
        acc *= rhs;
        continue;
      }
      if (!rhs.is_constant()) fail_at(ParseErrorKind::NonPolynomial, "division by a non-constant expression", op_pos);
      const Rational d = rhs.constant_term();
      if (d.is_zero()) fail_at(ParseErrorKind::DivisionByZero, "division by zero", op_pos);
      acc *= Rational(1) / d;
    }
  }

  Poly factor() {
    skip_ws();
    const char c = peek();
    if (c == '-' || c == '+') {
      ++pos_;
      if (++depth_ > kMaxDepth) fail(ParseErrorKind::Syntax, "expression nested too deeply");
      Poly p = factor();
      --depth_;
      return c == '-' ? -p : p;
    }
    return power();
  }

  Poly power() {
    Poly base = primary();
    skip_ws();
    if (peek() != '^') return base;
    ++pos_;
    skip_ws();
    const bool paren = peek() == '(';
    if (paren) {
      ++pos_;
      skip_ws();
    }
    const std::size_t exp_pos = pos_;
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      ++pos_;
      skip_ws();
    }
    if (!is_digit(peek())) fail(ParseErrorKind::Syntax, "expected an integer exponent after '^'");
    std::size_t start = pos_;
    while (is_digit(peek())) ++pos_;
    if (peek() == '.') fail(ParseErrorKind::NonPolynomial, "exponent must be a non-negative integer");
    if (negative) fail_at(ParseErrorKind::NonPolynomial, "negative exponent", exp_pos);
    const auto digits = src_.substr(start, pos_ - start);
    unsigned value = 0;
    if (digits.size() > 6 || std::from_chars(digits.data(), digits.data() + digits.size(), value).ec != std::errc{} ||
        value > kMaxExponent) {
      fail_at(ParseErrorKind::NonPolynomial, "exponent larger than " + std::to_string(kMaxExponent), start);
    }
    if (paren) {
      skip_ws();
      if (peek() != ')') fail(ParseErrorKind::Syntax, "expected ')' after exponent");
      ++pos_;
    }
    skip_ws();
    if (peek() == '^') fail(ParseErrorKind::Syntax, "chained '^' is ambiguous; use parentheses");
    return base.pow(value);
  }

  Poly primary() {
    skip_ws();
    const char c = peek();
    if (at_end()) fail(ParseErrorKind::Syntax, "unexpected end of expression");
    if (is_digit(c)) {
      const std::size_t start = pos_;
      while (is_digit(peek())) ++pos_;
      if (peek() == '.' || peek() == 'e' || peek() == 'E') {
        fail_at(ParseErrorKind::Syntax, "floating-point literals are not allowed; write a rational like 3/2", start);
      }
      if (is_ident_start(peek())) fail(ParseErrorKind::Syntax, "implicit multiplication is not allowed; use '*'");
      return Poly::constant(Rational(mpz_class(std::string(src_.substr(start, pos_ - start)), 10)));
    }
    if (is_ident_start(c)) {
      const std::size_t start = pos_;
      while (is_ident_char(peek())) ++pos_;
      std::string name(src_.substr(start, pos_ - start));
      if (!known_.count(name)) fail_at(ParseErrorKind::UnknownVariable, "unknown variable '" + name + "'", start);
      skip_ws();
      if (peek() == '(') fail(ParseErrorKind::Syntax, "function calls are not supported");
      return Poly::variable(std::move(name));
    }
    if (c == '(') {
      ++pos_;
      if (++depth_ > kMaxDepth) fail(ParseErrorKind::Syntax, "expression nested too deeply");
      Poly inner = sum();
      --depth_;
      skip_ws();
      if (peek() != ')') fail(ParseErrorKind::Syntax, "expected ')'");
      ++pos_;
      return inner;
    }
    fail(ParseErrorKind::Syntax, std::string("unexpected character '") + c + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int depth_ = 0;
  int line_;
  int col_offset_;
  std::set<std::string> known_;
  std::vector<std::string> universe_;
};

// ---------------------------------------------------------------------------
// Problem file scanner.

struct Value {
  enum class Kind { String, List, Scalar } kind = Kind::Scalar;
  std::string text;           // String contents or scalar token
  std::vector<Value> items;   // List
  int line = 0;
  int column = 0;
};

class FileScanner {
 public:
  explicit FileScanner(std::string_view text) : src_(text) {}

  bool next_entry(std::string& key, Value& value, int& key_line, int& key_col) {
    skip_blank_lines();
    if (at_end()) return false;
    key_line = line_;
    key_col = col();
    if (!is_ident_start(peek())) fail(ParseErrorKind::Syntax, "expected a key");
    const std::size_t start = pos_;
    while (is_ident_char(peek()) || peek() == '.') advance();
    key = std::string(src_.substr(start, pos_ - start));
    skip_inline_ws();
    if (peek() != '=') fail(ParseErrorKind::Syntax, "expected '=' after key '" + key + "'");
    advance();
    skip_inline_ws();
    value = parse_value(0);
    skip_inline_ws();
    if (peek() == '#') skip_comment();
    if (!at_end() && peek() != '\n' && peek() != '\r') fail(ParseErrorKind::Syntax, "trailing characters after value");
    return true;
  }

  [[noreturn]] void fail(ParseErrorKind kind, const std::string& msg) const {
    throw ParseError(kind, msg, line_, col());
  }

 private:
  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return at_end() ? '\0' : src_[pos_]; }
  int col() const { return static_cast<int>(pos_ - line_start_) + 1; }
  void advance() {
    if (at_end()) return;
    if (src_[pos_] == '\n') {
      ++line_;
      line_start_ = pos_ + 1;
    }
    ++pos_;
  }
  void skip_inline_ws() {
    while (peek() == ' ' || peek() == '\t') advance();
  }
  void skip_comment() {
    while (!at_end() && peek() != '\n') advance();
  }
  void skip_blank_lines() {
    for (;;) {
      while (peek() == ' ' || peek() == '\t' || peek() == '\r' || peek() == '\n') advance();
      if (peek() == '#') {
        skip_comment();
        continue;
      }
      return;
    }
  }
  void skip_ws_in_list() {
    for (;;) {
      while (peek() == ' ' || peek() == '\t' || peek() == '\r' || peek() == '\n') advance();
      if (peek() == '#') {
        skip_comment();
        continue;
      }
      return;
    }
  }

  Value parse_value(int depth) {
    if (depth > 8) fail(ParseErrorKind::Syntax, "lists nested too deeply");
    Value v;
    v.line = line_;
    v.column = col();
    const char c = peek();
    if (c == '"') {
      advance();
      v.kind = Value::Kind::String;
      v.column = col();
      const std::size_t start = pos_;
      while (!at_end() && peek() != '"' && peek() != '\n') advance();
      if (peek() != '"') fail(ParseErrorKind::Syntax, "unterminated string");
      v.text = std::string(src_.substr(start, pos_ - start));
      advance();
      return v;
    }
    if (c == '[') {
      advance();
      v.kind = Value::Kind::List;
      skip_ws_in_list();
      if (peek() == ']') {
        advance();
        return v;
      }
      for (;;) {
        skip_ws_in_list();
        v.items.push_back(parse_value(depth + 1));
        skip_ws_in_list();
        if (peek() == ',') {
          advance();
          continue;
        }
        if (peek() == ']') {
          advance();
          return v;
        }
        fail(ParseErrorKind::Syntax, "expected ',' or ']' in list");
      }
    }
    const std::size_t start = pos_;
    while (!at_end()) {
      const char d = peek();
      if (d == ',' || d == ']' || d == '[' || d == '\n' || d == '\r' || d == '#' || d == ' ' || d == '\t' || d == '"') break;
      advance();
    }
    if (pos_ == start) fail(ParseErrorKind::Syntax, "expected a value");
    v.text = std::string(src_.substr(start, pos_ - start));
    return v;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_start_ = 0;
  int line_ = 1;
};

[[noreturn]] void value_error(const Value& v, const std::string& msg) {
  throw ParseError(ParseErrorKind::InvalidValue, msg, v.line, v.column);
}

long parse_int_value(const Value& v, long lo, long hi, const std::string& key) {
  if (v.kind != Value::Kind::Scalar) value_error(v, key + " expects an integer");
  long out = 0;
  const auto* b = v.text.data();
  const auto* e = b + v.text.size();
  auto [ptr, ec] = std::from_chars(b, e, out);
  if (ec != std::errc{} || ptr != e || out < lo || out > hi) {
    value_error(v, key + " expects an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return out;
}

double parse_double_value(const Value& v, const std::string& key) {
  if (v.kind != Value::Kind::Scalar) value_error(v, key + " expects a number");
  try {
    std::size_t used = 0;
    const double d = std::stod(v.text, &used);
    if (used != v.text.size() || !std::isfinite(d)) value_error(v, key + " expects a finite number");
    return d;
  } catch (const std::logic_error&) {
    value_error(v, key + " expects a number");
  }
}

SeedValue parse_seed_value(const Value& v) {
  if (v.kind != Value::Kind::Scalar) value_error(v, "seed entries must be numbers");
  const std::string& t = v.text;
  const bool looks_float = t.find_first_of(".eE") != std::string::npos;
  if (!looks_float) {
    try {
      return Rational::parse(t);
    } catch (const std::exception&) {
      value_error(v, "malformed rational seed entry '" + t + "'");
    }
  }
  return parse_double_value(v, "seeds");
}

}  // namespace

ParseError::ParseError(ParseErrorKind kind, std::string message, int line, int column)
    : std::runtime_error(format_message(kind, message, line, column)),
      kind_(kind), line_(line), column_(column), detail_(std::move(message)) {}

Poly parse_expression(std::string_view src, const std::vector<std::string>& variables) {
  return ExpressionParser(src, variables, 1, 0).parse();
}

std::vector<std::string> ProblemSpec::variable_names() const {
  std::vector<std::string> out;
  out.reserve(variables.size());
  for (const auto& v : variables) out.push_back(v.name);
  return out;
}

bool ProblemSpec::declares_weights() const {
  return !variables.empty() &&
         std::all_of(variables.begin(), variables.end(), [](const VariableDecl& v) { return v.weight.has_value(); });
}

ProblemSpec parse_problem(std::string_view text) {
  FileScanner scanner(text);
  ProblemSpec spec;

  struct Pending {
    std::string key;
    Value value;
  };
  std::vector<Pending> expressions;
  std::set<std::string> seen;
  bool have_variables = false;

  std::string key;
  Value value;
  int key_line = 0;
  int key_col = 0;
  while (scanner.next_entry(key, value, key_line, key_col)) {
    if (!seen.insert(key).second) {
      throw ParseError(ParseErrorKind::InvalidValue, "duplicate key '" + key + "'", key_line, key_col);
    }
    if (key == "variables") {
      if (value.kind != Value::Kind::List || value.items.empty()) value_error(value, "variables expects a non-empty list");
      std::set<std::string> names;
      for (const auto& item : value.items) {
        if (item.kind != Value::Kind::Scalar) value_error(item, "variable entries look like name or name:weight");
        VariableDecl decl;
        const auto colon = item.text.find(':');
        decl.name = item.text.substr(0, colon);
        if (decl.name.empty() || !is_ident_start(decl.name[0]) ||
            !std::all_of(decl.name.begin(), decl.name.end(), is_ident_char)) {
          value_error(item, "invalid variable name '" + decl.name + "'");
        }
        if (colon != std::string::npos) {
          Value w = item;
          w.text = item.text.substr(colon + 1);
          decl.weight = static_cast<int>(parse_int_value(w, 1, 1000, "variable weight"));
        }
        if (!names.insert(decl.name).second) {
          throw ParseError(ParseErrorKind::DuplicateVariable, "variable '" + decl.name + "' declared twice", item.line,
                           item.column);
        }
        spec.variables.push_back(std::move(decl));
      }
      have_variables = true;
    } else if (key == "H_F" || key == "H_G" || key.rfind("F.", 0) == 0 || key.rfind("G.", 0) == 0) {
      if (value.kind != Value::Kind::String) value_error(value, key + " expects a quoted expression");
      expressions.push_back({key, value});
    } else if (key == "seeds") {
      if (value.kind != Value::Kind::List) value_error(value, "seeds expects a list of vectors");
      for (const auto& seed : value.items) {
        if (seed.kind != Value::Kind::List) value_error(seed, "each seed is a list of numbers");
        std::vector<SeedValue> vec;
        for (const auto& entry : seed.items) vec.push_back(parse_seed_value(entry));
        spec.seeds.push_back(std::move(vec));
      }
    } else if (key == "truncation") {
      spec.truncation = static_cast<int>(parse_int_value(value, 1, 10000, key));
    } else if (key == "tolerance") {
      spec.options.tolerance = parse_double_value(value, key);
      if (spec.options.tolerance <= 0) value_error(value, "tolerance must be positive");
    } else if (key == "newton_iterations") {
      spec.options.newton_iterations = static_cast<int>(parse_int_value(value, 1, 100000, key));
    } else if (key == "max_weight") {
      spec.options.max_weight = static_cast<int>(parse_int_value(value, 1, 64, key));
    } else if (key == "rng_seed") {
      spec.options.rng_seed = static_cast<unsigned long long>(parse_int_value(value, 0, 2147483647L, key));
    } else if (key == "format") {
      const std::string& f = value.text;
      if (f != "text" && f != "json") value_error(value, "format must be text or json");
      spec.options.format = f;
    } else if (key == "name") {
      if (value.kind != Value::Kind::String) value_error(value, "name expects a quoted string");
      spec.name = value.text;
    } else {
      throw ParseError(ParseErrorKind::InvalidValue, "unknown key '" + key + "'", key_line, key_col);
    }
  }

  if (!have_variables) throw ParseError(ParseErrorKind::MissingField, "missing 'variables'");
  const auto names = spec.variable_names();
  const std::size_t m = names.size();

  auto parse_in_file = [&](const Pending& p) {
    spec.sources.emplace_back(p.key, p.value.text);
    return ExpressionParser(p.value.text, names, p.value.line, p.value.column - 1).parse();
  };

  std::map<std::size_t, Poly> f_parts;
  std::map<std::size_t, Poly> g_parts;
  for (const auto& p : expressions) {
    if (p.key == "H_F") {
      spec.hamiltonian_f = parse_in_file(p);
    } else if (p.key == "H_G") {
      spec.hamiltonian_g = parse_in_file(p);
    } else {
      const auto index_text = p.key.substr(2);
      std::size_t idx = 0;
      auto [ptr, ec] = std::from_chars(index_text.data(), index_text.data() + index_text.size(), idx);
      if (ec != std::errc{} || ptr != index_text.data() + index_text.size() || idx < 1 || idx > m) {
        throw ParseError(ParseErrorKind::InvalidValue,
                         "component key '" + p.key + "' must be F.i or G.i with 1 <= i <= " + std::to_string(m),
                         p.value.line, 1);
      }
      (p.key[0] == 'F' ? f_parts : g_parts).emplace(idx, parse_in_file(p));
    }
  }

  auto assemble = [&](const char* which, std::map<std::size_t, Poly>& parts, std::optional<Poly>& ham,
                      std::vector<Poly>& out, bool required) {
    if (!parts.empty() && ham) {
      throw ParseError(ParseErrorKind::InvalidValue,
                       std::string("both components and a Hamiltonian given for ") + which);
    }
    if (ham) {
      if (m % 2 != 0) {
        throw ParseError(ParseErrorKind::OddVariableCountForHamiltonian,
                         "a Hamiltonian needs (q, p) pairs but " + std::to_string(m) + " variables were declared");
      }
      return;
    }
    if (parts.empty()) {
      if (required) throw ParseError(ParseErrorKind::MissingField, std::string("missing field ") + which + " (give " + which + ".1 .. " + which + "." + std::to_string(m) + " or H_" + which + ")");
      return;
    }
    for (std::size_t i = 1; i <= m; ++i) {
      auto it = parts.find(i);
      if (it == parts.end()) {
        throw ParseError(ParseErrorKind::MissingField, std::string("missing component ") + which + "." + std::to_string(i));
      }
      out.push_back(it->second);
    }
  };
  assemble("F", f_parts, spec.hamiltonian_f, spec.field_f, true);
  assemble("G", g_parts, spec.hamiltonian_g, spec.field_g, false);

  for (const auto& seed : spec.seeds) {
    if (seed.size() != m) {
      throw ParseError(ParseErrorKind::InvalidValue,
                       "seed of length " + std::to_string(seed.size()) + " for " + std::to_string(m) + " variables");
    }
  }
  return spec;
}

}  // namespace kovan
