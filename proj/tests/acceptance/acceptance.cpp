// Acceptance gate: one PASS/FAIL line per criterion; exit status 1 if any fails.
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "kovan/analysis.hpp"
#include "random_fields.hpp"

using namespace kovan;
using kovan::testing::Rng;

namespace {

using Clock = std::chrono::steady_clock;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ProblemSpec problem(const std::string& name) { return parse_problem(slurp(std::string(KOVAN_PROBLEM_DIR) + "/" + name)); }

ExactVector ev(std::initializer_list<long> xs) {
  ExactVector out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

std::vector<Rational> sorted(std::vector<Rational> v) {
  std::sort(v.begin(), v.end());
  return v;
}

IndicialLocus exact_locus(const ExactVector& c) {
  IndicialLocus l;
  l.exactness = Exactness::Exact;
  l.exact = c;
  for (const auto& r : c) l.numeric.emplace_back(r.to_double(), 0.0);
  return l;
}

/// Collects failed sub-checks for one criterion.
struct Checks {
  std::vector<std::string> failed;
  void expect(bool ok, const std::string& what) {
    if (!ok) failed.push_back(what);
  }
};

const LocusAnalysis* locus_at(const AnalysisReport& rep, const ExactVector& c) {
  for (const auto& l : rep.loci)
    if (l.locus.is_exact() && l.locus.exact == c) return &l;
  return nullptr;
}

std::optional<std::vector<Rational>> exps(const LocusAnalysis* l) {
  if (!l) return std::nullopt;
  return l->exponents.rational_exponents();
}

Poly alpha(const char* text) { return parse_expression(text, {"alpha1", "alpha2", "alpha3"}); }

void criterion1(Checks& c) {
  const AnalysisReport rep = analyze(problem("pI_components.kov"), Stage::Series);
  c.expect(rep.loci.size() == 1, "exactly one locus");
  const LocusAnalysis* l = locus_at(rep, ev({1, -2}));
  c.expect(l != nullptr, "locus (1, -2)");
  if (!l) return;
  c.expect(exps(l) == sorted({Rational(-1), Rational(6)}), "exponents {-1, 6}");
  if (!l->series) {
    c.failed.push_back("series missing");
    return;
  }
  const LaurentSolution& s = *l->series;
  const std::vector<std::string> p{"alpha1"};
  c.expect(s.coeff(1, 6) == Rational(4) * s.coeff(0, 6) && !s.coeff(0, 6).is_zero(), "d_{2,6} = 4 d_{1,6}");
  c.expect(s.coeff(1, 12) == parse_expression("10/13*alpha1^2", p), "T^9 coefficient 10 alpha1^2/13");
  c.expect(s.coeff(0, 12) == parse_expression("1/13*alpha1^2", p), "T^10 coefficient alpha1^2/13");
  for (std::size_t j = 1; j < 12; ++j) {
    if (j == 6) continue;
    c.expect(s.coeff(0, j).is_zero() && s.coeff(1, j).is_zero(), "vanishing order " + std::to_string(j));
  }
  c.expect(rep.violations.empty(), "no violations");
}

void criterion2(Checks& c, const std::string& file, long kappa) {
  const AnalysisReport rep = analyze(problem(file), Stage::Loci);
  bool found = false;
  for (const auto& l : rep.loci) {
    if (l.exponents.classification != LocusClass::Principal) continue;
    const auto ex = l.exponents.rational_exponents();
    if (ex && *ex == sorted({Rational(-1), Rational(kappa)})) found = true;
  }
  c.expect(found, file + ": principal locus with exponent " + std::to_string(kappa));
}

void criterion3(Checks& c) {
  const AnalysisReport rep = analyze(problem("pI_product.kov"), Stage::Flow);
  c.expect(rep.loci.size() == 3, "three loci");
  const auto e1 = exps(locus_at(rep, ev({1, -2, 0, 0})));
  const auto e2 = exps(locus_at(rep, ev({0, 0, 1, -2})));
  const auto e3 = exps(locus_at(rep, ev({1, -2, 1, -2})));
  const auto principal = sorted({Rational(-1), Rational(2), Rational(3), Rational(6)});
  const auto lower = sorted({Rational(-1), Rational(-1), Rational(6), Rational(6)});
  c.expect(e1 == principal && e2 == principal, "principal exponents (-1, 2, 3, 6) twice");
  c.expect(e3 == lower, "lower exponents (-1, -1, 6, 6)");
  if (!rep.g_side || !rep.g_side->flow) {
    c.failed.push_back("parameter flow missing");
    return;
  }
  const ParamFlow& f = *rep.g_side->flow;
  c.expect(f.g0 == Poly::constant(-1), "alpha0' = -1");
  c.expect(f.g.size() == 3, "three parameter equations");
  if (f.g.size() == 3) {
    c.expect(f.g[0] == alpha("-alpha2"), "alpha1' = -alpha2");
    c.expect(f.g[1] == alpha("-6*alpha1^2"), "alpha2' = -6 alpha1^2");
    c.expect(f.g[2].is_zero(), "alpha3' = 0");
  }
  bool predicted = false;
  if (rep.g_side->degeneration) {
    for (const auto& fl : rep.g_side->degeneration->loci) {
      if (fl.prediction != lower) continue;
      for (std::size_t k : fl.matched_loci)
        if (rep.loci[k].locus.exact == ev({1, -2, 1, -2})) predicted = true;
    }
  }
  c.expect(predicted, "prediction (-1, -1, 6, 6) matches the lower locus");
}

void criterion4(Checks& c) {
  const AnalysisReport rep = analyze(problem("pI_4d.kov"), Stage::Flow);
  const auto p1 = exps(locus_at(rep, ev({1, 1, 1, -1})));
  const auto p2 = exps(locus_at(rep, ev({3, 27, 0, -3})));
  const auto lower = sorted({Rational(-3), Rational(-1), Rational(8), Rational(10)});
  c.expect(p1 == sorted({Rational(-1), Rational(2), Rational(5), Rational(8)}), "(1,1,1,-1) exponents (-1, 2, 5, 8)");
  c.expect(p2 == lower, "(3,27,0,-3) exponents (-3, -1, 8, 10)");
  c.expect(rep.degree_hf == 8, "deg H_F = 8");
  c.expect(rep.degree_hg == 10, "deg H_G = 10");
  if (!rep.g_side) {
    c.failed.push_back("G analysis missing");
    return;
  }
  const GAnalysis& g = *rep.g_side;
  c.expect(g.gamma == 3, "gamma = 3");
  if (g.expansion) {
    bool zero = true;
    for (std::size_t k = 0; k < 2; ++k)
      for (const auto& p : g.expansion->g.at(k)) zero = zero && p.is_zero();
    c.expect(zero, "G_0 = G_1 = 0");
  } else {
    c.failed.push_back("G expansion missing");
  }
  c.expect(g.kernel && g.kernel->ok && g.kernel->locus_identity_ok && g.kernel->proportional_ok,
           "kernel identities for k = 0, 1, 2");
  if (!g.flow) {
    c.failed.push_back("parameter flow missing");
    return;
  }
  const ParamFlow& f = *g.flow;
  c.expect(f.g0 == alpha("3*alpha1"), "alpha0' = 3 alpha1");
  if (f.g.size() == 3) {
    c.expect(f.g[0] == alpha("-3/2*alpha2"), "alpha1' = -3/2 alpha2");
    if (f.g[1] != alpha("-54*alpha1^4")) c.failed.push_back("alpha2' = -54 alpha1^4 (computed " + f.g[1].to_string() + ")");
    c.expect(f.g[2] == alpha("42*alpha1^3*alpha2"), "alpha3' = 42 alpha1^3 alpha2");
  } else {
    c.failed.push_back("three parameter equations");
  }
  bool rho = false, predicted = false;
  const std::vector<Rational> want_rho = sorted({Rational(-1, 3), Rational(-1), Rational(8, 3), Rational(10, 3)});
  if (g.degeneration) {
    for (const auto& fl : g.degeneration->loci) {
      if (fl.rho && sorted(*fl.rho) == want_rho) rho = true;
      if (fl.prediction && sorted(*fl.prediction) == lower) predicted = true;
    }
  }
  c.expect(rho, "flow locus rho = (-1/3, -1, 8/3, 10/3)");
  c.expect(predicted, "prediction (-1, -3, 8, 10)");
}

/// Runs `body` over `cases` seeds and counts the ones it accepted.
void property(Checks& c, const std::string& name, int wanted, int attempts,
              const std::function<std::optional<bool>(Rng&)>& body) {
  Rng rng(std::hash<std::string>{}(name));
  int ran = 0, bad = 0;
  for (int i = 0; i < attempts && ran < wanted; ++i) {
    const auto r = body(rng);
    if (!r) continue;
    ++ran;
    if (!*r) ++bad;
  }
  if (ran < wanted) c.failed.push_back(name + ": only " + std::to_string(ran) + " cases");
  if (bad > 0) c.failed.push_back(name + ": " + std::to_string(bad) + " of " + std::to_string(ran) + " cases failed");
}

const std::vector<int>& pick_weights(Rng& rng) {
  const auto& pool = kovan::testing::weight_pool();
  return pool[static_cast<std::size_t>(kovan::testing::uniform_int(rng, 0, static_cast<int>(pool.size()) - 1))];
}

ExactVector random_point(Rng& rng, std::size_t m) {
  ExactVector c;
  for (std::size_t k = 0; k < m; ++k) c.push_back(kovan::testing::random_rational(rng, 3, 2, true));
  return c;
}

VectorField rescale(const VectorField& f, const ExactVector& s) {
  std::map<std::string, Poly> sub;
  for (std::size_t i = 0; i < s.size(); ++i) sub[f.variables()[i]] = s[i] * Poly::variable(f.variables()[i]);
  std::vector<Poly> comps;
  for (std::size_t i = 0; i < s.size(); ++i) comps.push_back((Rational(1) / s[i]) * f[i].substitute(sub));
  return VectorField(f.variables(), comps);
}

void criterion5(Checks& c) {
  using kovan::testing::names;
  const int n = 100;

  property(c, "Euler identity iff weight certificate", n, n, [](Rng& rng) -> std::optional<bool> {
    const auto& w = pick_weights(rng);
    const auto vars = names(w.size());
    VectorField f = kovan::testing::random_qh_field(vars, w, 1, rng);
    if (kovan::testing::uniform_int(rng, 0, 1) == 1) {
      std::vector<Poly> comps = f.components();
      comps[0] += kovan::testing::random_poly(vars, rng, 2, 2);
      f = VectorField(vars, comps);
    }
    return verify_weight(f, {w, 1}).ok == euler_identity_check(f, {w, 1}).ok;
  });

  property(c, "-1 eigenpair at exact loci", n, n, [](Rng& rng) -> std::optional<bool> {
    const auto& w = pick_weights(rng);
    const ExactVector pt = random_point(rng, w.size());
    const VectorField f = kovan::testing::field_with_locus(names(w.size()), w, pt, rng);
    const Weights wt{w, 1};
    bool ok = true;
    for (const auto& l : find_loci(f, wt).loci) {
      if (!l.is_exact()) continue;
      const ExactMatrix k = kovalevskaya_matrix(f, wt, l.exact);
      ExactVector v;
      for (std::size_t j = 0; j < w.size(); ++j) v.push_back(Rational(w[j]) * l.exact[j]);
      const ExactVector kv = k.apply(v);
      for (std::size_t j = 0; j < w.size(); ++j) ok = ok && kv[j] == -v[j];
    }
    return ok;
  });

  struct SeriesCase {
    VectorField f;
    Weights w;
    KExponentReport k;
    LaurentSolution s;
  };
  auto random_series = [](Rng& rng) -> std::optional<SeriesCase> {
    const auto& w = pick_weights(rng);
    const ExactVector pt = random_point(rng, w.size());
    VectorField f = kovan::testing::field_with_locus(names(w.size()), w, pt, rng);
    const Weights wt{w, 1};
    KExponentReport k = k_exponents(f, wt, exact_locus(pt));
    LaurentSolution s = build_series(f, wt, exact_locus(pt), std::max(3, std::min(default_truncation(k), 8)));
    if (!s.obstructions.empty()) return std::nullopt;
    return SeriesCase{std::move(f), wt, std::move(k), std::move(s)};
  };

  property(c, "series coefficient support law", n, 4 * n, [&](Rng& rng) -> std::optional<bool> {
    const auto sc = random_series(rng);
    if (!sc) return std::nullopt;
    return qh_coefficient_check(sc->s, sc->k.resonances()).empty();
  });

  const VectorField f4 = hamiltonian_to_field(
      parse_expression("2*p1*p2 + 3*p2^2*q1 + q1^4 - q1^2*q2 - q2^2", {"q1", "p1", "q2", "p2"}), {"q1", "p1", "q2", "p2"});
  const VectorField g4 = hamiltonian_to_field(
      parse_expression("p1^2 + 2*p1*p2*q1 - q1^5 + p2^2*q2 + 3*q1^3*q2 - 2*q1*q2^2", {"q1", "p1", "q2", "p2"}),
      {"q1", "p1", "q2", "p2"});
  property(c, "parameter flow support law", n, n, [&](Rng& rng) -> std::optional<bool> {
    ExactVector s, ct;
    const ExactVector c0 = ev({1, 1, 1, -1});
    for (std::size_t k = 0; k < 4; ++k) {
      s.push_back(kovan::testing::random_rational(rng, 5, 4, true));
      ct.push_back(c0[k] / s[k]);
    }
    const VectorField f = rescale(f4, s), g = rescale(g4, s);
    const Weights w{{2, 5, 4, 3}, 1};
    const LaurentSolution sol = build_series(f, w, exact_locus(ct), 11);
    const ParamFlow flow = param_flow(f, w, g, sol);
    return flow_support_check(flow).empty() && qh_coefficient_check(sol, {2, 5, 8}).empty();
  });

  property(c, "series residual order > N - max a_i", n, 4 * n, [&](Rng& rng) -> std::optional<bool> {
    const auto sc = random_series(rng);
    if (!sc) return std::nullopt;
    const int amax = *std::max_element(sc->w.weights.begin(), sc->w.weights.end());
    bool ok = true;
    for (const auto& r : residual_orders(sc->f, sc->s)) ok = ok && (!r || *r > sc->s.truncation - amax);
    return ok;
  });

  property(c, "Hamiltonian pairing closure", n, 6 * n, [](Rng& rng) -> std::optional<bool> {
    static const std::vector<std::vector<int>> pairs{{1, 2}, {2, 3}, {1, 3}, {1, 1}, {2, 5}};
    const auto& w = pairs[static_cast<std::size_t>(kovan::testing::uniform_int(rng, 0, 4))];
    const long degh = w[0] + w[1] + 1;
    const std::vector<std::string> qp{"q", "p"};
    const Poly h = kovan::testing::random_qh_poly(qp, w, static_cast<int>(degh), rng);
    if (h.is_zero()) return std::nullopt;
    const VectorField f = hamiltonian_to_field(h, qp);
    const Weights wt{w, 1};
    bool any = false, ok = true;
    for (const auto& l : find_loci(f, wt).loci) {
      if (!l.is_exact()) ok = ok && l.residual <= 1e-12;
      const auto ex = k_exponents(f, wt, l).rational_exponents();
      if (!ex) continue;
      any = true;
      ok = ok && hamiltonian_pairing_check(*ex, degh, wt).ok;
    }
    if (!any) return std::nullopt;
    return ok;
  });

  property(c, "exponent invariance under diagonal scalings", n, n, [](Rng& rng) -> std::optional<bool> {
    const auto& w = pick_weights(rng);
    const ExactVector pt = random_point(rng, w.size());
    const VectorField f = kovan::testing::field_with_locus(names(w.size()), w, pt, rng);
    const auto yv = names(w.size(), "y");
    std::vector<Poly> phi;
    ExactVector cy;
    for (std::size_t k = 0; k < w.size(); ++k) {
      const Rational s = kovan::testing::random_rational(rng, 5, 3, true);
      phi.push_back(s * Poly::variable(yv[k]));
      cy.push_back(pt[k] / s);
    }
    const TransformReport t = transform_check(f, {w, 1}, phi, yv, cy);
    return t.new_locus_verified && t.exponents_equal;
  });
}

void criterion6(Checks& c) {
  const AnalysisReport rep = analyze(problem("pI_product.kov"), Stage::Analyze);
  if (!rep.g_side) {
    c.failed.push_back("G analysis missing");
    return;
  }
  const auto lower = sorted({Rational(-1), Rational(-1), Rational(6), Rational(6)});
  for (const auto& eps : default_epsilons()) {
    bool ok = false;
    for (const auto& d : rep.g_side->deformed)
      if (d.epsilon == eps && d.matched_exponents == lower && d.matched_locus) ok = true;
    c.expect(ok, "epsilon = " + eps.to_string() + " has a locus with (-1, -1, 6, 6)");
  }
  c.expect(rep.g_side->deformed.size() == 3, "three epsilon values");
}

void criterion7(Checks& c) {
  Rng rng(7);
  std::uniform_int_distribution<int> len(0, 96), byte(0, 255), pick(0, 3);
  static const std::string alphabet = "xyzpq0123456789+-*/^() .=[]\"#\n,:FHG_";
  long structured = 0;
  for (int i = 0; i < 100000; ++i) {
    std::string s(static_cast<std::size_t>(len(rng)), '\0');
    const bool bytes = pick(rng) == 0;
    for (auto& ch : s)
      ch = bytes ? static_cast<char>(byte(rng)) : alphabet[static_cast<std::size_t>(byte(rng)) % alphabet.size()];
    try {
      if (i % 2 == 0) {
        (void)parse_problem(s);
      } else {
        (void)parse_expression(s, {"x", "y", "z"});
      }
    } catch (const ParseError&) {
      ++structured;
    } catch (const std::exception& e) {
      c.failed.push_back(std::string("unstructured exception: ") + e.what());
      return;
    }
  }
  if (structured == 0) c.failed.push_back("no input was rejected");
}

bool report(int id, const std::string& title, double limit_s, const std::function<void(Checks&)>& body) {
  Checks c;
  const auto t0 = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failed.push_back(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (limit_s > 0 && secs >= limit_s) c.failed.push_back("runtime limit exceeded");
  std::ostringstream line;
  line << (c.failed.empty() ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " (" << std::fixed
       << std::setprecision(3) << secs << " s";
  if (limit_s > 0) line << ", limit " << limit_s << " s";
  line << ")";
  std::cout << line.str() << "\n";
  for (const auto& f : c.failed) std::cout << "    failed: " << f << "\n";
  return c.failed.empty();
}

}  // namespace

int main() {
  bool ok = true;
  ok &= report(1, "P-I component form: locus, exponents and exact series", 1.0, criterion1);
  ok &= report(2, "autonomous limits: exponent at the principal locus", 3.0, [](Checks& c) {
    for (const auto& [file, kappa] : std::vector<std::pair<std::string, long>>{
             {"pI_auto.kov", 6}, {"pII_auto.kov", 4}, {"pIV_auto.kov", 3}}) {
      const auto t0 = Clock::now();
      criterion2(c, file, kappa);
      if (std::chrono::duration<double>(Clock::now() - t0).count() >= 1.0) c.failed.push_back(file + ": over 1 s");
    }
  });
  ok &= report(3, "product of two P-I systems: loci, flow and prediction", 5.0, criterion3);
  ok &= report(4, "four-dimensional pair: loci, flow, rho and prediction", 30.0, criterion4);
  ok &= report(5, "property suite, at least 100 cases each", 0.0, criterion5);
  ok &= report(6, "deformed field F + G/(eps + k1) keeps the lower exponents", 10.0, criterion6);
  ok &= report(7, "parser fuzz: 100000 inputs, structured errors only", 0.0, criterion7);
  return ok ? 0 : 1;
}
