#include "doctest.h"
#include "kovan/field.hpp"
#include "kovan/parse.hpp"
#include "random_fields.hpp"

using namespace kovan;
using kovan::testing::Rng;

namespace {

const std::vector<std::string> Q4{"q1", "p1", "q2", "p2"};
const char* kHF4 = "2*p1*p2 + 3*p2^2*q1 + q1^4 - q1^2*q2 - q2^2";
const char* kHG4 = "p1^2 + 2*p1*p2*q1 - q1^5 + p2^2*q2 + 3*q1^3*q2 - 2*q1*q2^2";

VectorField ham(const char* h, const std::vector<std::string>& vars = Q4) {
  return hamiltonian_to_field(parse_expression(h, vars), vars);
}

VectorField comps(std::initializer_list<const char*> fs, const std::vector<std::string>& vars) {
  std::vector<Poly> out;
  for (const char* f : fs) out.push_back(parse_expression(f, vars));
  return VectorField(vars, out);
}

VectorField pI() { return comps({"y", "6*x^2"}, {"x", "y"}); }

}  // namespace

TEST_SUITE("vfmodel") {
  TEST_CASE("Hamiltonian fields") {
    const VectorField f = hamiltonian_to_field(parse_expression("p^2/2", {"q", "p"}), {"q", "p"});
    CHECK(f[0] == Poly::variable("p"));
    CHECK(f[1].is_zero());

    const VectorField f4 = ham(kHF4);
    CHECK(f4[0] == parse_expression("2*p2", Q4));
    CHECK(f4[1] == parse_expression("-3*p2^2 - 4*q1^3 + 2*q1*q2", Q4));
    CHECK(f4[2] == parse_expression("2*p1 + 6*p2*q1", Q4));
    CHECK(f4[3] == parse_expression("q1^2 + 2*q2", Q4));
    // the resulting locus condition -a_i c_i = f_i(c) at (1, 1, 1, -1), weight (2, 5, 4, 3)
    const ExactVector c{Rational(1), Rational(1), Rational(1), Rational(-1)};
    const ExactVector fc = f4.evaluate(c);
    const int a[] = {2, 5, 4, 3};
    for (std::size_t i = 0; i < 4; ++i) CHECK(fc[i] == Rational(-a[i]) * c[i]);

    const VectorField prod = ham("(p1^2/2 - 2*q1^3) + (p2^2/2 - 2*q2^3)");
    CHECK(prod[0] == parse_expression("p1", Q4));
    CHECK(prod[1] == parse_expression("6*q1^2", Q4));
    CHECK(prod[2] == parse_expression("p2", Q4));
    CHECK(prod[3] == parse_expression("6*q2^2", Q4));

    CHECK_THROWS_AS(hamiltonian_to_field(parse_expression("p^2", {"q", "p", "r"}), {"q", "p", "r"}), UnpairedVariable);
  }

  TEST_CASE("weight verification") {
    CHECK(verify_weight(pI(), {{2, 3}, 1}).ok);
    CHECK(verify_weight(ham(kHG4), {{2, 5, 4, 3}, 3}).ok);
    const WeightCheck bad = verify_weight(comps({"x^2"}, {"x"}), {{1}, 2});
    CHECK_FALSE(bad.ok);
    REQUIRE(bad.violations.size() == 1);
    CHECK(bad.violations[0].weighted_degree == 2);
    CHECK(bad.violations[0].expected == 3);
  }

  TEST_CASE("weight inference") {
    const WeightInference w = infer_weights(pI(), 1);
    CHECK(std::find(w.certificates.begin(), w.certificates.end(), Weights{{2, 3}, 1}) != w.certificates.end());
    CHECK(w.first_primitive() == Weights{{2, 3}, 1});
    const WeightInference w4 = infer_weights(ham(kHF4), 1);
    CHECK(std::find(w4.certificates.begin(), w4.certificates.end(), Weights{{2, 5, 4, 3}, 1}) != w4.certificates.end());
    const WeightInference z = infer_weights(VectorField({"x", "y"}, {Poly(), Poly()}), 1, 4);
    CHECK(z.degenerate);
    CHECK(infer_weights(comps({"y + x^2", "x"}, {"x", "y"}), 1).certificates.empty());
    CHECK(infer_degree(ham(kHG4), {2, 5, 4, 3}) == 3);
  }

  TEST_CASE("Lie bracket") {
    CHECK(lie_bracket(pI(), pI()).is_zero());
    CHECK(lie_bracket(ham("(p1^2/2 - 2*q1^3) + (p2^2/2 - 2*q2^3)"), ham("p1^2/2 - 2*q1^3")).is_zero());
    CHECK(lie_bracket(ham(kHF4), ham(kHG4)).is_zero());
    CHECK_FALSE(lie_bracket(ham(kHF4), ham("p1^2")).is_zero());
    CHECK_THROWS_AS(lie_bracket(pI(), ham(kHF4)), DimensionMismatch);
  }

  TEST_CASE("Lie bracket is bilinear and antisymmetric") {
    Rng rng(12);
    const auto vars = kovan::testing::names(3);
    for (int i = 0; i < 100; ++i) {
      const auto a = kovan::testing::random_qh_field(vars, {1, 2, 3}, 1, rng);
      const auto b = kovan::testing::random_qh_field(vars, {1, 2, 3}, 2, rng);
      const auto c = kovan::testing::random_qh_field(vars, {1, 2, 3}, 2, rng);
      const Rational s = kovan::testing::random_rational(rng);
      CHECK(lie_bracket(a, b) + lie_bracket(b, a) == VectorField(vars, {Poly(), Poly(), Poly()}));
      CHECK(lie_bracket(a, b + s * c) == lie_bracket(a, b) + s * lie_bracket(a, c));
    }
  }

  TEST_CASE("zero-locus condition") {
    CHECK(check_A3(pI(), {{2, 3}, 1}).status == A3Result::Status::Ok);
    CHECK(check_A3(comps({"x"}, {"x"}), {{1}, 0}).status == A3Result::Status::Ok);
    const A3Result g = check_A3(ham("p1^2/2 - 2*q1^3"), {{2, 3, 2, 3}, 1});
    CHECK(g.status == A3Result::Status::Counterexample);
    REQUIRE(g.exact_witness.has_value());
    const ExactVector& x = *g.exact_witness;
    CHECK(x[0].is_zero());
    CHECK(x[1].is_zero());
    CHECK((!x[2].is_zero() || !x[3].is_zero()));
    CHECK(check_A3(ham("(p1^2/2 - 2*q1^3) + (p2^2/2 - 2*q2^3)"), {{2, 3, 2, 3}, 1}).status == A3Result::Status::Ok);
  }

  TEST_CASE("Euler identity") {
    CHECK(euler_identity_check(pI(), {{2, 3}, 1}).ok);
    CHECK(euler_identity_check(ham(kHG4), {{2, 5, 4, 3}, 3}).ok);
    const IdentityCheck bad = euler_identity_check(comps({"y + x", "6*x^2"}, {"x", "y"}), {{2, 3}, 1});
    CHECK_FALSE(bad.ok);
    CHECK(bad.failing_components == std::vector<std::size_t>{0});
  }

  TEST_CASE("weight certificate and Euler identity agree on random fields") {
    Rng rng(41);
    int qh = 0;
    for (int i = 0; i < 200; ++i) {
      const auto& w = kovan::testing::weight_pool()[static_cast<std::size_t>(i) % kovan::testing::weight_pool().size()];
      const auto vars = kovan::testing::names(w.size());
      VectorField f = kovan::testing::random_qh_field(vars, w, 1, rng);
      if (i % 2) {
        // perturb one component with a random monomial of the wrong weighted degree
        std::vector<Poly> c = f.components();
        c[static_cast<std::size_t>(kovan::testing::uniform_int(rng, 0, static_cast<int>(w.size()) - 1))] +=
            kovan::testing::random_poly(vars, rng, 1, 3);
        f = VectorField(vars, c);
      }
      const bool a = verify_weight(f, {w, 1}).ok;
      CHECK(a == euler_identity_check(f, {w, 1}).ok);
      qh += a;
    }
    CHECK(qh > 100);
  }

  TEST_CASE("scaling identity of the Jacobian") {
    Rng rng(43);
    for (int i = 0; i < 120; ++i) {
      const auto& w = kovan::testing::weight_pool()[static_cast<std::size_t>(i) % kovan::testing::weight_pool().size()];
      const auto vars = kovan::testing::names(w.size());
      const int degree = kovan::testing::uniform_int(rng, 1, 3);
      const VectorField f = kovan::testing::random_qh_field(vars, w, degree, rng);
      CHECK(scaling_identity_check(f, {w, degree}, kovan::testing::random_rational(rng, 5, 3, true)).ok);
    }
    const VectorField bad = comps({"y + x", "6*x^2"}, {"x", "y"});
    CHECK_FALSE(scaling_identity_check(bad, {{2, 3}, 1}, Rational(2)).ok);
  }
}
