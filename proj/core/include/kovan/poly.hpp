#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kovan/rational.hpp"

namespace kovan {

using Exponents = std::vector<std::uint32_t>;

/// Sparse multivariate polynomial over the rationals.
///
/// The variable universe is kept sorted by name; binary operations merge the
/// universes of their operands, so polynomials over different variable sets can
/// be combined freely. No zero coefficient is ever stored.
class Poly {
 public:
  using TermMap = std::map<Exponents, Rational>;

  Poly() = default;
  explicit Poly(std::vector<std::string> variables);

  static Poly constant(const Rational& c);
  static Poly variable(std::string name);
  static Poly monomial(std::vector<std::string> variables, Exponents exponents,
                       const Rational& coefficient);

  const std::vector<std::string>& variables() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  Rational coefficient(const Exponents& e) const;
  int total_degree() const;
  int degree_in(std::string_view var) const;
  /// Index of `var` in variables(), or -1.
  int index_of(std::string_view var) const;
  /// Variables that actually occur with a positive exponent.
  std::vector<std::string> used_variables() const;

  /// Re-expresses this polynomial over `universe` (sorted and deduplicated
  /// internally); every used variable must be present.
  Poly over(std::vector<std::string> universe) const;

  Poly derivative(std::string_view var) const;
  Poly substitute(const std::map<std::string, Poly>& bindings) const;
  Poly pow(unsigned exponent) const;

  Rational evaluate(const std::map<std::string, Rational>& values) const;
  /// Values aligned with variables().
  Rational evaluate(std::span<const Rational> values) const;
  std::complex<double> evaluate(std::span<const std::complex<double>> values) const;

  /// Human-readable form that parse_expression() reads back exactly.
  std::string to_string() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }

  /// Equality of the polynomial functions; unused variables are ignored.
  friend bool operator==(const Poly& a, const Poly& b);

 private:
  void add_term(const Exponents& e, const Rational& c);
  void align_with(const Poly& other);

  std::vector<std::string> vars_;
  TermMap terms_;
};

/// Sorted union of two variable lists.
std::vector<std::string> merge_variables(const std::vector<std::string>& a,
                                         const std::vector<std::string>& b);

}  // namespace kovan
