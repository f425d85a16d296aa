#include "kovan/analysis.hpp"

#include <algorithm>
#include <sstream>

namespace kovan {

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::Check: return "check";
    case Stage::Loci: return "loci";
    case Stage::Series: return "series";
    case Stage::Flow: return "flow";
    case Stage::Analyze: return "analyze";
  }
  return "analyze";
}

std::vector<Rational> default_epsilons() { return {Rational(1, 10), Rational(1, 7), Rational(1, 3)}; }

namespace {

std::string weights_text(const std::vector<int>& w) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
  os << ')';
  return os.str();
}

std::string locus_label(std::size_t index) { return "locus #" + std::to_string(index + 1); }

VectorField build_field(const std::vector<std::string>& names, const std::vector<Poly>& comps,
                        const std::optional<Poly>& hamiltonian) {
  if (hamiltonian) return hamiltonian_to_field(*hamiltonian, names);
  return VectorField(names, comps);
}

EffectiveOptions merge(const ProblemSpec& p, const AnalysisOptions& o) {
  EffectiveOptions e;
  e.truncation = o.truncation ? o.truncation : p.truncation;
  if (o.rng_seed) e.rng_seed = *o.rng_seed;
  else if (p.options.rng_seed) e.rng_seed = *p.options.rng_seed;
  e.tolerance = o.tolerance.value_or(p.options.tolerance);
  e.newton_iterations = p.options.newton_iterations;
  e.max_weight = o.max_weight.value_or(p.options.max_weight);
  if (e.truncation && *e.truncation < 1) throw AnalysisInputError("truncation must be at least 1");
  if (!(e.tolerance > 0.0) || e.tolerance >= 1.0) throw AnalysisInputError("tolerance must lie in (0, 1)");
  if (e.max_weight < 1) throw AnalysisInputError("max-weight must be at least 1");
  return e;
}

Weights resolve_weights(const ProblemSpec& p, AnalysisReport& rep) {
  const bool any = std::any_of(p.variables.begin(), p.variables.end(),
                               [](const VariableDecl& v) { return v.weight.has_value(); });
  if (p.declares_weights()) {
    Weights w;
    for (const auto& v : p.variables) w.weights.push_back(*v.weight);
    const WeightCheck chk = verify_weight(rep.f, w);
    if (!chk.ok) {
      const auto& v = chk.violations.front();
      throw AnalysisInputError("F is not quasi-homogeneous of degree 1 for the declared weights " +
                               weights_text(w.weights) + ": component " + std::to_string(v.component + 1) +
                               " has a monomial of weighted degree " + std::to_string(v.weighted_degree) +
                               ", expected " + std::to_string(v.expected));
    }
    rep.weights_declared = true;
    rep.certificates = {w};
    return w;
  }
  if (any) throw AnalysisInputError("weights must be declared for every variable or for none");
  const WeightInference inf = infer_weights(rep.f, 1, rep.options.max_weight);
  if (inf.degenerate) throw AnalysisInputError("F is identically zero; no weight is determined");
  rep.certificates = inf.certificates;
  const auto w = inf.first_primitive();
  if (!w) {
    throw AnalysisInputError("weight inference failed: no positive weight with entries up to " +
                             std::to_string(rep.options.max_weight) +
                             " makes F quasi-homogeneous of degree 1");
  }
  std::size_t primitive = 0;
  for (const auto& c : inf.certificates) primitive += c.is_primitive() ? 1 : 0;
  if (primitive > 1) {
    rep.warnings.push_back("several primitive weights fit F; using " + weights_text(w->weights));
  }
  return *w;
}

LocusSearchOptions search_options(const EffectiveOptions& e) {
  LocusSearchOptions o;
  o.tolerance = e.tolerance;
  o.max_iterations = e.newton_iterations;
  o.rng_seed = e.rng_seed;
  return o;
}

void analyze_series(AnalysisReport& rep, std::optional<int> gamma) {
  for (std::size_t idx = 0; idx < rep.loci.size(); ++idx) {
    auto& la = rep.loci[idx];
    if (!la.locus.is_exact()) {
      la.series_note = "numeric locus; series not built";
      continue;
    }
    const int n = rep.options.truncation.value_or(default_truncation(la.exponents, gamma));
    LaurentSolution sol = build_series(rep.f, rep.weights, la.locus, n);
    la.series_class = classify(sol);
    for (const auto& w : sol.warnings) rep.warnings.push_back(locus_label(idx) + ": " + w);
    for (int j : sol.obstructions) {
      rep.violations.push_back(locus_label(idx) + ": resonance condition fails at order " + std::to_string(j));
    }
    la.coefficient_violations = qh_coefficient_check(sol, la.exponents.resonances());
    for (const auto& v : la.coefficient_violations) {
      rep.violations.push_back(locus_label(idx) + ": coefficient d_{" + std::to_string(v.component + 1) + "," +
                               std::to_string(v.order) + "} " + v.reason);
    }
    la.residual_orders = residual_orders(rep.f, sol);
    if (sol.obstructions.empty()) {
      for (const auto& r : la.residual_orders) {
        if (r && *r <= n) la.residual_ok = false;
      }
      if (!la.residual_ok) rep.violations.push_back(locus_label(idx) + ": series residual below the truncation order");
    }
    la.series = std::move(sol);
  }
}

void analyze_g(AnalysisReport& rep, const LocusSearchOptions& lopts) {
  GAnalysis& ga = *rep.g_side;
  const VectorField& g = *rep.g;
  if (!ga.gamma || !ga.commutes) {
    ga.note = "flow not computed: G must be quasi-homogeneous and commute with F";
    return;
  }
  for (std::size_t i = 0; i < rep.loci.size(); ++i) {
    const auto& sc = rep.loci[i].series_class;
    if (sc && sc->kind == SeriesClass::Kind::Principal) {
      ga.principal_index = i;
      break;
    }
  }
  if (!ga.principal_index) {
    ga.note = "no principal Laurent solution; flow not computed";
    rep.warnings.push_back(ga.note);
    return;
  }
  const LaurentSolution& sol = *rep.loci[*ga.principal_index].series;
  const int gamma = *ga.gamma;
  try {
    ga.expansion = g_expansion(g, gamma, sol, gamma - 1);
    ga.kernel = kernel_identity_check(rep.f, rep.weights, g, sol, *ga.expansion);
    if (!ga.kernel->ok) rep.violations.push_back("G-expansion identities fail at the principal locus");
    ga.flow = param_flow(rep.f, rep.weights, g, sol);
  } catch (const TruncationTooShort& e) {
    ga.note = e.what();
    rep.violations.push_back(std::string("parameter flow: ") + e.what());
    return;
  } catch (const InconsistentG0& e) {
    ga.note = e.what();
    rep.violations.push_back(std::string("parameter flow: ") + e.what());
    return;
  }
  const ParamFlow& flow = *ga.flow;
  ga.support_violations = flow_support_check(flow);
  if (!ga.support_violations.empty()) rep.violations.push_back("parameter flow violates the monomial support law");
  ga.nondegeneracy = nondegeneracy_check(g, sol, flow);
  if (!ga.nondegeneracy->consistent) rep.violations.push_back("alpha0' vanishes although the nondegeneracy test certifies it");

  std::vector<LowerLocusRef> lower;
  for (std::size_t i = 0; i < rep.loci.size(); ++i) {
    if (i == *ga.principal_index) continue;
    if (auto ex = rep.loci[i].exponents.rational_exponents()) lower.push_back({i, *ex});
  }
  try {
    ga.degeneration = degenerate(flow, lower, lopts);
    for (const auto& w : ga.degeneration->warnings) rep.warnings.push_back("degeneration: " + w);
    for (const auto& fl : ga.degeneration->loci) {
      if (fl.prediction && fl.matched_loci.empty()) {
        rep.warnings.push_back("degeneration: a predicted exponent multiset has no matching lower locus");
      }
      if (!fl.minus_one_ok) rep.violations.push_back("flow locus spectrum lacks -1 or -1/gamma");
      if (fl.rescaled_spectrum_ok && !*fl.rescaled_spectrum_ok) {
        rep.violations.push_back("rescaled flow spectrum disagrees with the flow exponents");
      }
      if (fl.conjugacy_ok && !*fl.conjugacy_ok) rep.violations.push_back("flow K-matrix similarity check fails");
    }
  } catch (const G0IdenticallyZero& e) {
    ga.note = e.what();
    rep.warnings.push_back(std::string("degeneration: ") + e.what());
  }

  const Weights gw{rep.weights.weights, gamma};
  for (const auto& l : find_loci(g, gw, {}, lopts).loci) {
    GLocus gl{l, std::nullopt, {}};
    const KExponentReport k = k_exponents(g, gw, l, NumericOptions{rep.options.tolerance, rep.options.newton_iterations});
    gl.exponents = k.rational_exponents();
    gl.numeric_exponents = k.numeric_exponents;
    ga.g_loci.push_back(std::move(gl));
  }
  if (ga.degeneration) {
    std::vector<std::vector<Rational>> gex;
    for (const auto& gl : ga.g_loci)
      if (gl.exponents) gex.push_back(*gl.exponents);
    match_g_exponents(*ga.degeneration, gex);
  }

  if (gamma == 1 && flow.g0.is_constant() && !flow.g0.is_zero() && ga.degeneration &&
      !ga.degeneration->loci.empty() && ga.degeneration->loci.front().prediction) {
    const Rational k1 = flow.g0.constant_term();
    const auto& prediction = *ga.degeneration->loci.front().prediction;
    for (const auto& eps : default_epsilons()) {
      if ((eps + k1).is_zero()) continue;
      const DeformedFieldReport d = deformed_field_check(rep.f, rep.weights, g, eps, k1, prediction, lopts);
      DeformedSummary s{eps, std::nullopt, std::nullopt, d.loci.size()};
      if (d.match) {
        s.matched_exponents = d.exponents[*d.match];
        s.matched_locus = d.loci[*d.match].exact;
      }
      ga.deformed.push_back(std::move(s));
    }
  }
}

}  // namespace

AnalysisReport analyze(const ProblemSpec& problem, Stage stage, const AnalysisOptions& opts) {
  AnalysisReport rep;
  rep.stage = stage;
  rep.name = problem.name;
  rep.variables = problem.variable_names();
  rep.sources = problem.sources;
  rep.options = merge(problem, opts);
  rep.f = build_field(rep.variables, problem.field_f, problem.hamiltonian_f);
  if (problem.has_g()) rep.g = build_field(rep.variables, problem.field_g, problem.hamiltonian_g);

  rep.weights = resolve_weights(problem, rep);
  rep.euler = euler_identity_check(rep.f, rep.weights);
  if (!rep.euler.ok) rep.violations.push_back("Euler identity fails for F");
  if (problem.hamiltonian_f) rep.degree_hf = weighted_degree(*problem.hamiltonian_f, rep.variables, rep.weights.weights);

  A3Options a3o;
  a3o.rng_seed = rep.options.rng_seed;
  a3o.tolerance = rep.options.tolerance;
  a3o.max_iterations = rep.options.newton_iterations;
  rep.a3 = check_A3(rep.f, rep.weights, a3o);

  if (rep.g) {
    rep.g_side.emplace();
    GAnalysis& ga = *rep.g_side;
    ga.gamma = infer_degree(*rep.g, rep.weights.weights);
    if (!ga.gamma) rep.violations.push_back("G is not quasi-homogeneous of positive degree for the weight of F");
    ga.commutes = lie_bracket(rep.f, *rep.g).is_zero();
    if (!ga.commutes) rep.violations.push_back("F and G do not commute");
    if (ga.gamma) ga.a3 = check_A3(*rep.g, Weights{rep.weights.weights, *ga.gamma}, a3o);
    if (problem.hamiltonian_g) {
      rep.degree_hg = weighted_degree(*problem.hamiltonian_g, rep.variables, rep.weights.weights);
    }
  }
  if (stage == Stage::Check) return rep;

  const LocusSearchOptions lopts = search_options(rep.options);
  const LocusSearchReport found = find_loci(rep.f, rep.weights, problem.seeds, lopts);
  rep.locus_strategies = found.strategies;
  if (found.loci.empty()) rep.warnings.push_back("no indicial locus found");
  const NumericOptions nopts{rep.options.tolerance, rep.options.newton_iterations};
  for (std::size_t idx = 0; idx < found.loci.size(); ++idx) {
    LocusAnalysis la;
    la.locus = found.loci[idx];
    try {
      la.exponents = k_exponents(rep.f, rep.weights, la.locus, nopts);
    } catch (const NumericNonConvergence& e) {
      rep.warnings.push_back(locus_label(idx) + ": " + e.what());
      continue;
    }
    if (la.locus.is_exact() && !la.exponents.minus_one_verified) {
      rep.violations.push_back(locus_label(idx) + ": (a_i c_i) is not a -1 eigenvector");
    }
    if (rep.degree_hf) {
      if (auto ex = la.exponents.rational_exponents()) {
        la.pairing = hamiltonian_pairing_check(*ex, *rep.degree_hf, rep.weights);
        if (!la.pairing->ok) rep.violations.push_back(locus_label(idx) + ": Hamiltonian exponent pairing fails");
      }
    }
    rep.loci.push_back(std::move(la));
  }
  if (stage == Stage::Loci) return rep;

  const bool want_flow = (stage == Stage::Flow || stage == Stage::Analyze) && rep.g_side;
  std::optional<int> gamma;
  if (want_flow) gamma = rep.g_side->gamma;
  analyze_series(rep, gamma);
  if (stage == Stage::Series) return rep;
  if (want_flow) analyze_g(rep, lopts);
  return rep;
}

}  // namespace kovan
