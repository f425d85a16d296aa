#include "doctest.h"
#include "kovan/loci.hpp"
#include "kovan/parse.hpp"
#include "random_fields.hpp"

using namespace kovan;
using kovan::testing::Rng;

namespace {

const std::vector<std::string> Q4{"q1", "p1", "q2", "p2"};
const std::vector<std::string> XY{"x", "y"};

VectorField ham(const char* h, const std::vector<std::string>& vars = Q4) {
  return hamiltonian_to_field(parse_expression(h, vars), vars);
}

VectorField pI() { return VectorField(XY, {parse_expression("y", XY), parse_expression("6*x^2", XY)}); }
VectorField product() { return ham("(p1^2/2 - 2*q1^3) + (p2^2/2 - 2*q2^3)"); }
VectorField four() { return ham("2*p1*p2 + 3*p2^2*q1 + q1^4 - q1^2*q2 - q2^2"); }

ExactVector ev(std::initializer_list<long> xs) {
  ExactVector out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

std::vector<Rational> rv(std::initializer_list<long> xs) { return ev(xs); }

IndicialLocus exact_locus(const ExactVector& c) {
  IndicialLocus l;
  l.exactness = Exactness::Exact;
  l.exact = c;
  for (const auto& r : c) l.numeric.emplace_back(r.to_double(), 0.0);
  return l;
}

const IndicialLocus& find(const std::vector<IndicialLocus>& loci, const ExactVector& c) {
  for (const auto& l : loci)
    if (l.is_exact() && l.exact == c) return l;
  FAIL("locus not found");
  return loci.front();
}

}  // namespace

TEST_SUITE("kovalevskaya") {
  TEST_CASE("loci of the component-form P-I field") {
    const auto rep = find_loci(pI(), {{2, 3}, 1});
    REQUIRE(rep.loci.size() == 1);
    CHECK(rep.loci[0].is_exact());
    CHECK(rep.loci[0].exact == ev({1, -2}));
    CHECK(rep.loci[0].residual == 0.0);
    CHECK_FALSE(rep.strategies.empty());
  }

  TEST_CASE("loci of the four-dimensional field") {
    const auto rep = find_loci(four(), {{2, 5, 4, 3}, 1});
    CHECK(rep.loci.size() == 2);
    find(rep.loci, ev({1, 1, 1, -1}));
    find(rep.loci, ev({3, 27, 0, -3}));
  }

  TEST_CASE("one-dimensional x' = x^2") {
    const VectorField f({"x"}, {parse_expression("x^2", {"x"})});
    const auto rep = find_loci(f, {{1}, 1});
    REQUIRE(rep.loci.size() == 1);
    CHECK(rep.loci[0].exact == ev({-1}));
  }

  TEST_CASE("user seeds are verified exactly or refined") {
    std::vector<std::vector<SeedValue>> seeds{{Rational(1), Rational(-2)}};
    auto rep = find_loci(pI(), {{2, 3}, 1}, seeds);
    REQUIRE(rep.loci.size() == 1);
    CHECK(rep.loci[0].source == LocusSource::UserSeed);
    seeds = {{1.01, -1.98}};
    rep = find_loci(pI(), {{2, 3}, 1}, seeds);
    REQUIRE(rep.loci.size() == 1);
    CHECK(rep.loci[0].exact == ev({1, -2}));
    seeds = {{Rational(1)}};
    CHECK_THROWS(find_loci(pI(), {{2, 3}, 1}, seeds));
  }

  TEST_CASE("empty search raises only when asked") {
    const VectorField lin(XY, {parse_expression("y", XY), Poly()});
    LocusSearchOptions o;
    o.throw_if_empty = true;
    CHECK_THROWS_AS(find_loci(lin, {{1, 2}, 1}, {}, o), NoLocusFound);
  }

  TEST_CASE("Kovalevskaya matrices") {
    const ExactMatrix k = kovalevskaya_matrix(pI(), {{2, 3}, 1}, ev({1, -2}));
    CHECK(k == ExactMatrix{{2, 1}, {12, 3}});
    // f_i = -a_i x_i: every point is a locus and K vanishes
    const VectorField lin(XY, {parse_expression("-2*x", XY), parse_expression("-3*y", XY)});
    const ExactMatrix z = kovalevskaya_matrix(lin, {{2, 3}, 1}, ev({5, 7}));
    CHECK(z == ExactMatrix(2, 2));
  }

  TEST_CASE("exponents and provisional classes") {
    const auto k = k_exponents(pI(), {{2, 3}, 1}, exact_locus(ev({1, -2})));
    CHECK(k.rational_exponents() == rv({-1, 6}));
    CHECK(k.classification == LocusClass::Principal);
    CHECK(k.minus_one_verified);
    CHECK(k.resonances() == std::vector<long>{6});

    const Weights w4{{2, 3, 2, 3}, 1};
    const auto p3 = k_exponents(product(), w4, exact_locus(ev({1, -2, 1, -2})));
    CHECK(p3.rational_exponents() == rv({-1, -1, 6, 6}));
    CHECK(p3.classification == LocusClass::Lower);
    CHECK(p3.semisimple_at_resonances == true);
    const auto p1 = k_exponents(product(), w4, exact_locus(ev({1, -2, 0, 0})));
    CHECK(p1.rational_exponents() == rv({-1, 2, 3, 6}));
    CHECK(p1.classification == LocusClass::Principal);

    const auto p2 = k_exponents(four(), {{2, 5, 4, 3}, 1}, exact_locus(ev({3, 27, 0, -3})));
    CHECK(p2.rational_exponents() == rv({-3, -1, 8, 10}));
    CHECK(p2.classification == LocusClass::Lower);
  }

  TEST_CASE("the product field has the three loci with their exponents") {
    const Weights w{{2, 3, 2, 3}, 1};
    const auto rep = find_loci(product(), w);
    REQUIRE(rep.loci.size() == 3);
    CHECK(k_exponents(product(), w, find(rep.loci, ev({1, -2, 0, 0}))).rational_exponents() == rv({-1, 2, 3, 6}));
    CHECK(k_exponents(product(), w, find(rep.loci, ev({0, 0, 1, -2}))).rational_exponents() == rv({-1, 2, 3, 6}));
    CHECK(k_exponents(product(), w, find(rep.loci, ev({1, -2, 1, -2}))).rational_exponents() == rv({-1, -1, 6, 6}));
  }

  TEST_CASE("coordinate changes keep the exponents") {
    const Weights w{{2, 3}, 1};
    const std::vector<std::string> uv{"u", "v"};
    const auto id = transform_check(pI(), w, {Poly::variable("u"), Poly::variable("v")}, uv, ev({1, -2}));
    CHECK(id.exponents_equal);
    CHECK(id.new_locus_verified);
    // x = 4 u, y = 8 v: the scaling by 2^a_i
    const auto sc = transform_check(pI(), w, {Rational(4) * Poly::variable("u"), Rational(8) * Poly::variable("v")}, uv,
                                    ExactVector{Rational(1, 4), Rational(-1, 4)});
    CHECK(sc.exponents_equal);
    CHECK(sc.new_locus_verified);
    REQUIRE(sc.polynomial_field.has_value());
    const auto k = k_exponents(*sc.polynomial_field, w, exact_locus({Rational(1, 4), Rational(-1, 4)}));
    CHECK(k.rational_exponents() == rv({-1, 6}));

    // swapping the two (q, p) pairs maps one principal locus onto the other
    const std::vector<std::string> y4{"y1", "y2", "y3", "y4"};
    const auto sw = transform_check(product(), {{2, 3, 2, 3}, 1},
                                    {Poly::variable("y3"), Poly::variable("y4"), Poly::variable("y1"), Poly::variable("y2")},
                                    y4, ev({0, 0, 1, -2}));
    CHECK(sw.image_locus == ev({1, -2, 0, 0}));
    CHECK(sw.new_locus_verified);
    CHECK(sw.exponents_equal);

    CHECK_THROWS_AS(transform_check(pI(), w, {Poly::variable("u"), Poly()}, uv, ev({1, -2})), SingularJacobian);
  }

  TEST_CASE("-1 eigenpair, zero residual and trace at exact loci of random fields") {
    Rng rng(17);
    for (int i = 0; i < 150; ++i) {
      const auto& w = kovan::testing::weight_pool()[static_cast<std::size_t>(i) % kovan::testing::weight_pool().size()];
      const auto vars = kovan::testing::names(w.size());
      ExactVector c;
      for (std::size_t k = 0; k < w.size(); ++k) c.push_back(kovan::testing::random_rational(rng, 4, 3, true));
      const VectorField f = kovan::testing::field_with_locus(vars, w, c, rng);
      const Weights wt{w, 1};
      REQUIRE(is_indicial_locus(f, wt, c));
      const ExactMatrix k = kovalevskaya_matrix(f, wt, c);
      ExactVector v;
      for (std::size_t j = 0; j < c.size(); ++j) v.push_back(Rational(w[j]) * c[j]);
      ExactVector kv = k.apply(v);
      for (std::size_t j = 0; j < c.size(); ++j) CHECK(kv[j] == -v[j]);
      const auto rep = k_exponents(f, wt, exact_locus(c));
      CHECK(rep.minus_one_verified);
      if (auto ex = rep.rational_exponents()) {
        Rational sum(0);
        for (const auto& e : *ex) sum += e;
        CHECK(sum == k.trace());
      }
    }
  }

  TEST_CASE("exponents are invariant under diagonal scalings") {
    Rng rng(19);
    for (int i = 0; i < 100; ++i) {
      const auto& w = kovan::testing::weight_pool()[static_cast<std::size_t>(i) % kovan::testing::weight_pool().size()];
      const auto vars = kovan::testing::names(w.size());
      const auto yvars = kovan::testing::names(w.size(), "y");
      ExactVector c;
      for (std::size_t k = 0; k < w.size(); ++k) c.push_back(kovan::testing::random_rational(rng, 4, 3, true));
      const VectorField f = kovan::testing::field_with_locus(vars, w, c, rng);
      std::vector<Poly> phi;
      ExactVector cy;
      for (std::size_t k = 0; k < w.size(); ++k) {
        const Rational s = kovan::testing::random_rational(rng, 5, 3, true);
        phi.push_back(s * Poly::variable(yvars[k]));
        cy.push_back(c[k] / s);
      }
      const auto t = transform_check(f, {w, 1}, phi, yvars, cy);
      CHECK(t.new_locus_verified);
      CHECK(t.exponents_equal);
      REQUIRE(t.polynomial_field.has_value());
      CHECK(t.field_quasi_homogeneous);
    }
  }
}
