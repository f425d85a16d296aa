#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kovan {

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
class Rational {
 public:
  Rational() = default;

  template <std::integral I>
  Rational(I v) : q_(mpz_from(v)) {}  // NOLINT(google-explicit-constructor)

  template <std::integral I, std::integral J>
  Rational(I num, J den) : q_(mpz_from(num), mpz_from(den)) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    q_.canonicalize();
  }

  explicit Rational(const mpz_class& num, const mpz_class& den = 1) : q_(num, den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    q_.canonicalize();
  }

  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  /// Parses "n", "-n", "n/d" (decimal integers, optional leading sign).
  static Rational parse(std::string_view text);

  const mpq_class& value() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }
  double to_double() const { return q_.get_d(); }

  /// Shortest form: "3", "-1/2".
  std::string to_string() const;
  /// Always "num/den", e.g. "3/1"; the wire format for reports.
  std::string to_fraction_string() const;

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("rational division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

 private:
  template <std::integral I>
  static mpz_class mpz_from(I v) {
    if constexpr (std::is_signed_v<I>) {
      if constexpr (sizeof(I) <= sizeof(long)) {
        return mpz_class(static_cast<long>(v));
      } else {
        return mpz_class(std::to_string(v));
      }
    } else {
      if constexpr (sizeof(I) <= sizeof(unsigned long)) {
        return mpz_class(static_cast<unsigned long>(v));
      } else {
        return mpz_class(std::to_string(v));
      }
    }
  }

  mpq_class q_;
};

Rational abs(const Rational& r);
/// Integer power; negative exponents invert (throws on 0^-n).
Rational pow(const Rational& base, long exponent);

/// Best rational approximation of `x` with denominator at most `max_den`
/// (continued-fraction convergents).
Rational rational_approximation(double x, long max_den);

}  // namespace kovan
