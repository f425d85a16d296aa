#include <complex>

#include "doctest.h"
#include "kovan/linalg.hpp"
#include "kovan/parse.hpp"
#include "kovan/roots.hpp"
#include "random_fields.hpp"

using namespace kovan;
using kovan::testing::Rng;
using kovan::testing::random_rational;
using kovan::testing::uniform_int;

namespace {

Poly P(const std::string& s, const std::vector<std::string>& vars) { return parse_expression(s, vars); }

std::map<std::string, Rational> random_point(const std::vector<std::string>& vars, Rng& rng) {
  std::map<std::string, Rational> at;
  for (const auto& v : vars) at[v] = random_rational(rng, 7, 5);
  return at;
}

ExactMatrix random_matrix(std::size_t n, Rng& rng, int range = 5) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Rational(uniform_int(rng, -range, range));
  return m;
}

}  // namespace

TEST_SUITE("exactalg") {
  TEST_CASE("rationals stay in lowest terms with a positive denominator") {
    const Rational r(6, -4);
    CHECK(r.numerator() == -3);
    CHECK(r.denominator() == 2);
    CHECK(Rational::parse("10/13") + Rational::parse("3/13") == Rational(1));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
      const Rational a = random_rational(rng, 50, 30);
      const Rational b = random_rational(rng, 50, 30, true);
      const Rational q = a / b;
      CHECK(q.denominator() > 0);
      CHECK(gcd(q.numerator(), q.denominator()) == 1);
      CHECK(q * b == a);
      CHECK(Rational::parse(q.to_string()) == q);
    }
  }

  TEST_CASE("polynomial arithmetic on small cases") {
    const std::vector<std::string> xy{"x", "y"};
    CHECK(P("x+1", xy) + P("x-1", xy) == P("2*x", xy));
    CHECK(P("x+y", xy) * P("x-y", xy) == P("x^2-y^2", xy));
    CHECK((P("x+1", xy) - P("x+1", xy)).is_zero());
    CHECK(P("x^2*y + 3", xy).total_degree() == 3);
    const Poly a = P("x^2 + y", xy);
    const Poly b = P("x - 2*y^3", xy);
    CHECK((a * b).total_degree() == a.total_degree() + b.total_degree());
  }

  TEST_CASE("polynomials over different variable sets merge by name") {
    const Poly a = parse_expression("x + 1", {"x"});
    const Poly b = parse_expression("y", {"y"});
    const Poly s = a + b;
    CHECK(s.variables() == std::vector<std::string>{"x", "y"});
    CHECK(s == parse_expression("x + y + 1", {"y", "x"}));
  }

  TEST_CASE("substitution examples") {
    const Poly x2 = parse_expression("x^2", {"x"});
    CHECK(x2.substitute({{"x", parse_expression("1 + t", {"t"})}}) == parse_expression("1 + 2*t + t^2", {"t"}));
    CHECK(x2.substitute({{"x", Poly::constant(Rational(0))}}).is_zero());
    // 6 x1^2 with x1 = u^2 (u standing for 1/T) gives 6 u^4, i.e. 6 T^-4.
    const Poly f = parse_expression("6*x1^2", {"x1"});
    const Poly s = f.substitute({{"x1", parse_expression("u^2", {"u"})}});
    CHECK(s.size() == 1);
    CHECK(s.coefficient(Exponents{4}) == Rational(6));
  }

  TEST_CASE("ring laws and evaluation homomorphism on random polynomials") {
    Rng rng(2024);
    const std::vector<std::string> vars{"a", "b", "c"};
    for (int i = 0; i < 150; ++i) {
      const Poly p = kovan::testing::random_poly(vars, rng);
      const Poly q = kovan::testing::random_poly(vars, rng);
      const Poly r = kovan::testing::random_poly(vars, rng);
      CHECK(p + q == q + p);
      CHECK(p * q == q * p);
      CHECK((p * q) * r == p * (q * r));
      CHECK(p * (q + r) == p * q + p * r);
      CHECK((p - p).is_zero());
      const auto at = random_point(vars, rng);
      CHECK((p * q).evaluate(at) == p.evaluate(at) * q.evaluate(at));
      CHECK((p + q).evaluate(at) == p.evaluate(at) + q.evaluate(at));
      for (const auto& [e, c] : p.terms()) CHECK(!c.is_zero());
    }
  }

  TEST_CASE("identity substitution is the identity and substitution commutes with evaluation") {
    Rng rng(77);
    const std::vector<std::string> vars{"a", "b"};
    for (int i = 0; i < 150; ++i) {
      const Poly p = kovan::testing::random_poly(vars, rng);
      CHECK(p.substitute({{"a", Poly::variable("a")}, {"b", Poly::variable("b")}}) == p);
      const Poly sa = kovan::testing::random_poly({"s", "t"}, rng, 3, 2);
      const Poly sb = kovan::testing::random_poly({"s", "t"}, rng, 3, 2);
      const Poly composed = p.substitute({{"a", sa}, {"b", sb}});
      const auto at = random_point({"s", "t"}, rng);
      std::map<std::string, Rational> inner{{"a", sa.is_zero() ? Rational(0) : sa.evaluate(at)},
                                            {"b", sb.is_zero() ? Rational(0) : sb.evaluate(at)}};
      const Rational lhs = composed.is_zero() ? Rational(0) : composed.evaluate(at);
      const Rational rhs = p.is_zero() ? Rational(0) : p.evaluate(inner);
      CHECK(lhs == rhs);
    }
  }

  TEST_CASE("characteristic polynomials") {
    const Poly l = Poly::variable("lambda");
    CHECK(charpoly(ExactMatrix::identity(2)) == (l - Poly::constant(1)) * (l - Poly::constant(1)));
    CHECK(charpoly(ExactMatrix(3, 3)) == l * l * l);
    const ExactMatrix k{{2, 1}, {12, 3}};
    // det(lambda I - K) = (lambda - 2)(lambda - 3) - 12
    CHECK(charpoly(k) == parse_expression("lambda^2 - 5*lambda - 6", {"lambda"}));
  }

  TEST_CASE("exact-first root finding") {
    const RootSet r = roots_exact_first(parse_expression("lambda^2 - 5*lambda - 6", {"lambda"}));
    REQUIRE(r.rational_roots.size() == 2);
    CHECK(r.rational_roots[0] == std::pair<Rational, int>{Rational(-1), 1});
    CHECK(r.rational_roots[1] == std::pair<Rational, int>{Rational(6), 1});
    CHECK(r.all_rational());

    const RootSet c = roots_exact_first(parse_expression("lambda^2 + 1", {"lambda"}));
    CHECK(c.rational_roots.empty());
    REQUIRE(c.numeric_roots.size() == 2);
    for (const auto& nr : c.numeric_roots) {
      CHECK(std::abs(nr.value.real()) < 1e-12);
      CHECK(std::abs(std::abs(nr.value.imag()) - 1.0) < 1e-12);
    }
  }

  TEST_CASE("rational roots of random products of linear factors are recovered exactly") {
    Rng rng(5);
    const Poly l = Poly::variable("lambda");
    for (int i = 0; i < 120; ++i) {
      const int n = uniform_int(rng, 1, 5);
      Poly p = Poly::constant(random_rational(rng, 5, 3, true));
      std::map<Rational, int> want;
      for (int k = 0; k < n; ++k) {
        const Rational r = random_rational(rng, 9, 4);
        p = p * (l - Poly::constant(r));
        ++want[r];
      }
      const RootSet rs = roots_exact_first(p);
      CHECK(rs.all_rational());
      std::map<Rational, int> got(rs.rational_roots.begin(), rs.rational_roots.end());
      CHECK(got == want);
      // the exact identity: prod (l - r)^m * residual == p
      Poly rebuilt = rs.residual_factor;
      for (const auto& [r, m] : rs.rational_roots)
        for (int k = 0; k < m; ++k) rebuilt = rebuilt * (l - Poly::constant(r));
      CHECK(rebuilt == p);
    }
  }

  TEST_CASE("eigenvalue sum and product match trace and determinant") {
    Rng rng(99);
    for (int i = 0; i < 120; ++i) {
      const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, 4));
      const ExactMatrix m = random_matrix(n, rng);
      const RootSet rs = roots_exact_first(charpoly(m));
      std::complex<double> sum = 0.0, prod = 1.0;
      for (const auto& v : rs.values()) {
        sum += v;
        prod *= v;
      }
      const double scale = 1.0 + std::abs(determinant(m).to_double());
      CHECK(std::abs(sum - m.trace().to_double()) < 1e-8 * (1.0 + std::abs(m.trace().to_double())));
      CHECK(std::abs(prod - determinant(m).to_double()) < 1e-8 * scale);
      for (const auto& nr : rs.numeric_roots) CHECK(nr.error_bound <= 1e-6);
    }
  }

  TEST_CASE("determinant, inverse and rank") {
    Rng rng(3);
    for (int i = 0; i < 120; ++i) {
      const ExactMatrix a = random_matrix(3, rng);
      const ExactMatrix b = random_matrix(3, rng);
      CHECK(determinant(a * b) == determinant(a) * determinant(b));
      if (!determinant(a).is_zero()) {
        const ExactMatrix prod = a * inverse(a);
        for (std::size_t r = 0; r < 3; ++r)
          for (std::size_t c = 0; c < 3; ++c) CHECK(prod(r, c) == Rational(r == c ? 1 : 0));
        CHECK(rank(a) == 3);
      } else {
        CHECK(rank(a) < 3);
      }
    }
  }

  TEST_CASE("solve_singular examples") {
    auto s = solve_singular(ExactMatrix::identity(2), ExactVector{Rational(1), Rational(2)});
    CHECK(s.consistent);
    CHECK(s.particular == ExactVector{Rational(1), Rational(2)});
    CHECK(s.kernel.empty());

    auto z = solve_singular(ExactMatrix(2, 2), ExactVector{Rational(0), Rational(0)});
    CHECK(z.consistent);
    CHECK(z.particular == ExactVector{Rational(0), Rational(0)});
    REQUIRE(z.kernel.size() == 2);
    CHECK(z.kernel[0] == ExactVector{Rational(1), Rational(0)});
    CHECK(z.kernel[1] == ExactVector{Rational(0), Rational(1)});

    auto bad = solve_singular(ExactMatrix(2, 2), ExactVector{Rational(1), Rational(0)});
    CHECK_FALSE(bad.consistent);
  }

  TEST_CASE("solve_singular returns exact particular solutions and kernels") {
    Rng rng(8);
    for (int i = 0; i < 150; ++i) {
      const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 2, 4));
      // rank-deficient: product of an n x k and k x n matrix
      const std::size_t k = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(n) - 1));
      ExactMatrix u(n, k), v(k, n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < k; ++c) u(r, c) = random_rational(rng);
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < n; ++c) v(r, c) = random_rational(rng);
      const ExactMatrix m = u * v;
      ExactVector x(n);
      for (auto& e : x) e = random_rational(rng);
      const ExactVector b = m.apply(x);
      const auto s = solve_singular(m, b);
      REQUIRE(s.consistent);
      CHECK(m.apply(s.particular) == b);
      CHECK(s.kernel.size() == n - rank(m));
      for (const auto& kv : s.kernel)
        for (const auto& e : m.apply(kv)) CHECK(e.is_zero());
    }
  }
}
