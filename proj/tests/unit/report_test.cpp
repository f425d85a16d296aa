#include <fstream>
#include <sstream>

#include "doctest.h"
#include "kovan/analysis.hpp"
#include "random_fields.hpp"
#include "report.hpp"

using namespace kovan;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ProblemSpec problem(const std::string& name) { return parse_problem(slurp(std::string(KOVAN_PROBLEM_DIR) + "/" + name)); }

/// Exact on strings, integers and structure; doubles within 1e-9.
void compare(const json& got, const json& want, const std::string& where) {
  INFO("at " << where);
  if (want.is_number_float() || got.is_number_float()) {
    REQUIRE(got.is_number());
    REQUIRE(want.is_number());
    CHECK(std::abs(got.get<double>() - want.get<double>()) <= 1e-9 * (1.0 + std::abs(want.get<double>())));
    return;
  }
  REQUIRE(got.type() == want.type());
  if (want.is_object()) {
    REQUIRE(got.size() == want.size());
    for (auto it = want.begin(); it != want.end(); ++it) {
      REQUIRE(got.contains(it.key()));
      compare(got.at(it.key()), it.value(), where + "." + it.key());
    }
  } else if (want.is_array()) {
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) compare(got[i], want[i], where + "[" + std::to_string(i) + "]");
  } else {
    CHECK(got == want);
  }
}

}  // namespace

TEST_SUITE("report") {
  TEST_CASE("rationals as strings") {
    CHECK(report::rational_string(Rational(3)) == "3/1");
    CHECK(report::rational_string(Rational(-10, 13)) == "-10/13");
    CHECK(report::rational_from_json(json("-10/13")) == Rational(-10, 13));
    CHECK(report::rational_from_json(json("4/2")) == Rational(2));
  }

  TEST_CASE("polynomial round trip") {
    kovan::testing::Rng rng(41);
    const std::vector<std::string> vars{"alpha1", "alpha2", "x"};
    for (int i = 0; i < 150; ++i) {
      const Poly p = kovan::testing::random_poly(vars, rng);
      const json j = report::poly_to_json(p);
      const Poly back = report::poly_from_json(j);
      CHECK(back == p);
      CHECK(report::poly_to_json(back) == j);
    }
  }

  TEST_CASE("series coefficients read back from the report") {
    const AnalysisReport rep = analyze(problem("pI_components.kov"), Stage::Series);
    REQUIRE(rep.loci.size() == 1);
    REQUIRE(rep.loci[0].series.has_value());
    const LaurentSolution& s = *rep.loci[0].series;
    const json j = json::parse(report::json_text(rep));
    CHECK(j.at("schema_version") == report::kSchemaVersion);
    CHECK(j.at("stage") == "series");
    const json& coeffs = j.at("loci")[0].at("series").at("coefficients");
    std::size_t seen = 0;
    for (const auto& entry : coeffs) {
      const auto i = entry.at("i").get<std::size_t>() - 1;  // 1-based in the report
      const auto jj = entry.at("j").get<std::size_t>();
      CHECK(report::poly_from_json(entry.at("poly")) == s.coeff(i, jj));
      ++seen;
    }
    CHECK(seen > 0);
    CHECK(json::parse(j.dump()) == j);
  }

  TEST_CASE("reports are deterministic") {
    for (const char* name : {"pI_components.kov", "pI_product.kov", "pI_4d.kov"}) {
      const std::string a = report::json_text(analyze(problem(name), Stage::Analyze));
      const std::string b = report::json_text(analyze(problem(name), Stage::Analyze));
      CHECK(a == b);
    }
  }

  TEST_CASE("golden reports") {
    for (const char* name : {"pI_components", "pI_product", "pI_4d"}) {
      const json got = json::parse(report::json_text(analyze(problem(std::string(name) + ".kov"), Stage::Analyze)));
      const json want = json::parse(slurp(std::string(KOVAN_GOLDEN_DIR) + "/" + name + ".json"));
      compare(got, want, name);
    }
  }

  TEST_CASE("text summary mentions the flow") {
    const std::string t = report::text_summary(analyze(problem("pI_4d.kov"), Stage::Analyze));
    CHECK(t.find("alpha2' = -54*alpha1^4 + 18*alpha3") != std::string::npos);
    CHECK(t.find("matched by #2") != std::string::npos);
  }

  TEST_CASE("analysis input errors") {
    ProblemSpec p = parse_problem("variables = [x, y]\nF.1 = \"y + x^2\"\nF.2 = \"x\"\n");
    CHECK_THROWS_AS(analyze(p, Stage::Check), AnalysisInputError);
    p = parse_problem("variables = [x:2, y:3]\nF.1 = \"y\"\nF.2 = \"x\"\n");
    CHECK_THROWS_AS(analyze(p, Stage::Check), AnalysisInputError);
  }
}
