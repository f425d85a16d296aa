#include "report.hpp"

#include <sstream>

namespace kovan::report {

using nlohmann::json;

std::string rational_string(const Rational& r) {
  return r.numerator().get_str() + "/" + r.denominator().get_str();
}

Rational rational_from_json(const json& j) {
  if (!j.is_string()) throw std::invalid_argument("rational must be a \"num/den\" string");
  return Rational::parse(j.get<std::string>());
}

json poly_to_json(const Poly& p) {
  const Poly q = p.over(p.used_variables());
  json monomials = json::object();
  for (const auto& [e, c] : q.terms()) {
    std::string key;
    for (std::size_t k = 0; k < e.size(); ++k) key += (k ? "," : "") + std::to_string(e[k]);
    monomials[key] = rational_string(c);
  }
  return {{"text", p.to_string()}, {"variables", q.variables()}, {"monomials", monomials}};
}

Poly poly_from_json(const json& j) {
  const auto vars = j.at("variables").get<std::vector<std::string>>();
  Poly out(vars);
  for (const auto& [key, coeff] : j.at("monomials").items()) {
    Exponents e;
    std::size_t pos = 0;
    while (pos < key.size()) {
      const std::size_t comma = std::min(key.find(',', pos), key.size());
      e.push_back(static_cast<std::uint32_t>(std::stoul(key.substr(pos, comma - pos))));
      pos = comma + 1;
    }
    if (e.size() != vars.size()) throw std::invalid_argument("monomial key '" + key + "' has the wrong length");
    out += Poly::monomial(vars, e, rational_from_json(coeff));
  }
  return out;
}

namespace {

json rationals(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& r : v) a.push_back(rational_string(r));
  return a;
}

json complexes(const ComplexVector& v) {
  json a = json::array();
  for (const auto& z : v) a.push_back({z.real(), z.imag()});
  return a;
}

json optional_rationals(const std::optional<std::vector<Rational>>& v) {
  return v ? rationals(*v) : json(nullptr);
}

json ints(const std::vector<int>& v) { return json(v); }

json locus_json(const IndicialLocus& l) {
  json j{{"exactness", to_string(l.exactness)}, {"source", to_string(l.source)}};
  if (l.is_exact()) j["coordinates"] = rationals(l.exact);
  else j["numeric_coordinates"] = complexes(l.numeric);
  if (!l.is_exact()) j["residual"] = l.residual;
  return j;
}

json exponents_json(const KExponentReport& k) {
  json j;
  j["exact"] = k.exact;
  j["exponents"] = optional_rationals(k.rational_exponents());
  if (!k.rational_exponents()) j["numeric_exponents"] = complexes(k.numeric_exponents);
  if (k.exact) {
    json m = json::array();
    for (std::size_t r = 0; r < k.matrix.rows(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < k.matrix.cols(); ++c) row.push_back(rational_string(k.matrix(r, c)));
      m.push_back(row);
    }
    j["matrix"] = m;
    j["characteristic_polynomial"] = poly_to_json(k.charpoly);
    j["minus_one_eigenvector"] = rationals(k.minus_one_eigenvector);
  }
  j["minus_one_verified"] = k.minus_one_verified;
  j["has_zero_exponent"] = k.has_zero_exponent;
  j["semisimple_at_resonances"] = k.semisimple_at_resonances ? json(*k.semisimple_at_resonances) : json(nullptr);
  j["classification"] = to_string(k.classification);
  return j;
}

json series_json(const LocusAnalysis& la) {
  const LaurentSolution& s = *la.series;
  json j;
  j["truncation"] = s.truncation;
  j["class"] = to_string(la.series_class->kind);
  j["parameter_count"] = la.series_class->parameter_count;
  json params = json::array();
  for (std::size_t l = 0; l < s.parameters.size(); ++l) {
    params.push_back({{"name", s.parameters[l]}, {"order", s.parameter_orders[l]},
                      {"anchor", s.parameter_anchors[l] + 1}});
  }
  j["parameters"] = params;
  json res = json::array();
  for (const auto& r : s.resonances) {
    res.push_back({{"order", r.order}, {"kernel_dimension", r.kernel.size()}, {"consistent", r.consistent},
                   {"parameters", r.parameters}});
  }
  j["resonances"] = res;
  j["obstructions"] = ints(s.obstructions);
  json coeffs = json::array();
  for (std::size_t jj = 0; jj < s.d.size(); ++jj) {
    for (std::size_t i = 0; i < s.d[jj].size(); ++i) {
      if (s.d[jj][i].is_zero()) continue;
      coeffs.push_back({{"i", i + 1}, {"j", jj}, {"poly", poly_to_json(s.d[jj][i])}});
    }
  }
  j["coefficients"] = coeffs;
  json ro = json::array();
  for (const auto& r : la.residual_orders) ro.push_back(r ? json(*r) : json(nullptr));
  j["residual_orders"] = ro;
  j["residual_ok"] = la.residual_ok;
  json cv = json::array();
  for (const auto& v : la.coefficient_violations) {
    cv.push_back({{"component", v.component + 1}, {"order", v.order}, {"reason", v.reason}});
  }
  j["coefficient_violations"] = cv;
  j["warnings"] = s.warnings;
  return j;
}

json a3_json(const A3Result& a) {
  json j{{"status", to_string(a.status)}, {"detail", a.detail}};
  if (a.exact_witness) j["witness"] = rationals(*a.exact_witness);
  if (a.numeric_witness) j["numeric_witness"] = complexes(*a.numeric_witness);
  return j;
}

json flow_json(const ParamFlow& f) {
  json eq = json::array();
  eq.push_back({{"variable", "alpha0"}, {"weight", -1}, {"rhs", poly_to_json(f.g0)}});
  for (std::size_t l = 0; l < f.g.size(); ++l) {
    eq.push_back({{"variable", f.variables[l]}, {"weight", f.kappa[l]}, {"rhs", poly_to_json(f.g[l])}});
  }
  return {{"gamma", f.gamma}, {"equations", eq}};
}

json degeneration_json(const DegenerationReport& d) {
  json loci = json::array();
  for (const auto& fl : d.loci) {
    json j;
    j["reduced_locus"] = locus_json(fl.reduced_locus);
    j["reduced_exponents"] = optional_rationals(fl.reduced_exponents);
    if (fl.exact_flow_locus) j["flow_locus"] = rationals(*fl.exact_flow_locus);
    j["numeric_flow_loci"] = json::array();
    for (const auto& x : fl.flow_loci) j["numeric_flow_loci"].push_back(complexes(x));
    if (fl.xi0_power) j["xi0_power"] = rational_string(*fl.xi0_power);
    j["rho"] = optional_rationals(fl.rho);
    if (!fl.rho) j["numeric_rho"] = complexes(fl.numeric_rho);
    j["minus_one_ok"] = fl.minus_one_ok;
    j["rescaled_spectrum_ok"] = fl.rescaled_spectrum_ok ? json(*fl.rescaled_spectrum_ok) : json(nullptr);
    j["similarity_ok"] = fl.conjugacy_ok ? json(*fl.conjugacy_ok) : json(nullptr);
    j["prediction"] = optional_rationals(fl.prediction);
    json matched = json::array();
    for (auto m : fl.matched_loci) matched.push_back(m + 1);
    j["matched_loci"] = matched;
    j["matches_g_locus"] = fl.matches_g_locus ? json(*fl.matches_g_locus) : json(nullptr);
    loci.push_back(j);
  }
  return {{"gamma", d.gamma}, {"strategies", d.strategies}, {"loci", loci}, {"warnings", d.warnings}};
}

json g_json(const AnalysisReport& rep) {
  const GAnalysis& ga = *rep.g_side;
  json j;
  j["components"] = json::array();
  for (const auto& p : rep.g->components()) j["components"].push_back(poly_to_json(p));
  j["gamma"] = ga.gamma ? json(*ga.gamma) : json(nullptr);
  j["commutes"] = ga.commutes;
  if (ga.a3) j["A3"] = a3_json(*ga.a3);
  if (rep.degree_hg) j["hamiltonian_degree"] = *rep.degree_hg;
  j["principal_locus"] = ga.principal_index ? json(*ga.principal_index + 1) : json(nullptr);
  if (ga.expansion) {
    json e = json::array();
    for (std::size_t k = 0; k < ga.expansion->g.size(); ++k) {
      json comps = json::array();
      for (const auto& p : ga.expansion->g[k]) comps.push_back(poly_to_json(p));
      e.push_back({{"k", k}, {"components", comps}});
    }
    j["expansion"] = e;
  }
  if (ga.kernel) {
    j["expansion_identities"] = {{"ok", ga.kernel->ok},
                                 {"failing_orders", ga.kernel->failing_orders},
                                 {"locus_identity_ok", ga.kernel->locus_identity_ok},
                                 {"leading_zero_ok", ga.kernel->leading_zero_ok},
                                 {"proportional_ok", ga.kernel->proportional_ok},
                                 {"h", ga.kernel->h ? poly_to_json(*ga.kernel->h) : json(nullptr)}};
  }
  if (ga.flow) j["flow"] = flow_json(*ga.flow);
  json sv = json::array();
  for (const auto& v : ga.support_violations) {
    sv.push_back({{"index", v.index}, {"weighted_degree", v.weighted_degree}, {"expected", v.expected}});
  }
  j["support_violations"] = sv;
  if (ga.nondegeneracy) {
    j["nondegeneracy"] = {{"result", to_string(ga.nondegeneracy->result)},
                          {"alpha0_rhs_identically_zero", ga.nondegeneracy->g0_identically_zero},
                          {"consistent", ga.nondegeneracy->consistent}};
  }
  if (ga.degeneration) j["degeneration"] = degeneration_json(*ga.degeneration);
  json gl = json::array();
  for (const auto& l : ga.g_loci) {
    json x = locus_json(l.locus);
    x["exponents"] = optional_rationals(l.exponents);
    if (!l.exponents) x["numeric_exponents"] = complexes(l.numeric_exponents);
    gl.push_back(x);
  }
  j["loci"] = gl;
  json df = json::array();
  for (const auto& d : ga.deformed) {
    json x{{"epsilon", rational_string(d.epsilon)}, {"loci", d.loci}};
    x["matched_exponents"] = optional_rationals(d.matched_exponents);
    x["matched_locus"] = d.matched_locus ? rationals(*d.matched_locus) : json(nullptr);
    df.push_back(x);
  }
  j["deformed_field"] = df;
  if (!ga.note.empty()) j["note"] = ga.note;
  return j;
}

}  // namespace

json to_json(const AnalysisReport& rep) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["stage"] = to_string(rep.stage);
  json sources = json::array();
  for (const auto& [k, v] : rep.sources) sources.push_back({{"key", k}, {"expression", v}});
  j["input"] = {{"name", rep.name}, {"variables", rep.variables}, {"sources", sources}};
  j["options"] = {{"truncation", rep.options.truncation ? json(*rep.options.truncation) : json(nullptr)},
                  {"rng_seed", rep.options.rng_seed},
                  {"tolerance", rep.options.tolerance},
                  {"newton_iterations", rep.options.newton_iterations},
                  {"max_weight", rep.options.max_weight}};
  json fcomps = json::array();
  for (const auto& p : rep.f.components()) fcomps.push_back(poly_to_json(p));
  j["F"] = fcomps;
  json certs = json::array();
  for (const auto& c : rep.certificates) certs.push_back(c.weights);
  j["weights"] = {{"weights", rep.weights.weights}, {"degree", rep.weights.degree},
                  {"declared", rep.weights_declared}, {"certificates", certs}};
  if (rep.degree_hf) j["hamiltonian_degree"] = *rep.degree_hf;
  j["euler_identity"] = {{"ok", rep.euler.ok}, {"failing_components", rep.euler.failing_components}};
  j["A3"] = a3_json(rep.a3);
  if (rep.stage != Stage::Check) {
    j["locus_strategies"] = rep.locus_strategies;
    json loci = json::array();
    for (std::size_t i = 0; i < rep.loci.size(); ++i) {
      const auto& la = rep.loci[i];
      json l = locus_json(la.locus);
      l["index"] = i + 1;
      l["kovalevskaya"] = exponents_json(la.exponents);
      if (la.pairing) {
        l["hamiltonian_pairing"] = {{"ok", la.pairing->ok}, {"closed", la.pairing->closed},
                                    {"weight_pairs_ok", la.pairing->weight_pairs_ok}};
      }
      if (la.series) l["series"] = series_json(la);
      if (!la.series_note.empty()) l["series_note"] = la.series_note;
      loci.push_back(l);
    }
    j["loci"] = loci;
  }
  if (rep.g_side) j["G"] = g_json(rep);
  j["warnings"] = rep.warnings;
  j["violations"] = rep.violations;
  return j;
}

std::string json_text(const AnalysisReport& rep) { return to_json(rep).dump(2) + "\n"; }

namespace {

std::string join(const std::vector<Rational>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string();
  return s + ")";
}

std::string join_complex(const ComplexVector& v) {
  std::ostringstream os;
  os.precision(6);
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    const double tiny = 1e-12 * (1.0 + std::abs(v[i]));
    os << (std::abs(v[i].real()) < tiny ? 0.0 : v[i].real());
    if (std::abs(v[i].imag()) >= tiny) os << (v[i].imag() < 0 ? " - " : " + ") << std::abs(v[i].imag()) << "i";
  }
  os << ')';
  return os.str();
}

}  // namespace

std::string text_summary(const AnalysisReport& rep) {
  std::ostringstream os;
  os << (rep.name.empty() ? std::string("problem") : rep.name) << "\n";
  os << "variables: ";
  for (std::size_t i = 0; i < rep.variables.size(); ++i) os << (i ? ", " : "") << rep.variables[i];
  os << "\nweight: (";
  for (std::size_t i = 0; i < rep.weights.weights.size(); ++i) os << (i ? ", " : "") << rep.weights.weights[i];
  os << ")" << (rep.weights_declared ? " declared" : " inferred");
  if (rep.degree_hf) os << ", deg H_F = " << *rep.degree_hf;
  if (rep.degree_hg) os << ", deg H_G = " << *rep.degree_hg;
  os << "\nEuler identity: " << (rep.euler.ok ? "ok" : "FAILS") << "\n";
  os << "A3 for F: " << to_string(rep.a3.status);
  if (rep.a3.exact_witness) os << " at " << join(*rep.a3.exact_witness);
  os << "\n";
  if (rep.g_side) {
    const auto& ga = *rep.g_side;
    os << "G: gamma = " << (ga.gamma ? std::to_string(*ga.gamma) : std::string("none"))
       << ", [F,G] " << (ga.commutes ? "= 0" : "!= 0");
    if (ga.a3) {
      os << ", A3 for G: " << to_string(ga.a3->status);
      if (ga.a3->exact_witness) os << " at " << join(*ga.a3->exact_witness);
    }
    os << "\n";
  }
  if (rep.stage != Stage::Check) {
    os << "indicial loci: " << rep.loci.size() << "\n";
    for (std::size_t i = 0; i < rep.loci.size(); ++i) {
      const auto& la = rep.loci[i];
      os << "  #" << i + 1 << " "
         << (la.locus.is_exact() ? join(la.locus.exact) : join_complex(la.locus.numeric) + " numeric");
      if (auto ex = la.exponents.rational_exponents()) os << "  kappa = " << join(*ex);
      else os << "  kappa ~ " << join_complex(la.exponents.numeric_exponents);
      os << "  " << to_string(la.exponents.classification) << "\n";
      if (la.series) {
        const auto& s = *la.series;
        os << "     series to order " << s.truncation << ": " << to_string(la.series_class->kind) << ", "
           << la.series_class->parameter_count << " parameters";
        os << " (alpha0";
        for (std::size_t l = 0; l < s.parameters.size(); ++l) {
          os << ", " << s.parameters[l] << " at " << s.parameter_orders[l];
        }
        os << ")";
        if (!s.obstructions.empty()) os << ", obstructed at order " << s.obstructions.front();
        os << "\n";
      } else if (!la.series_note.empty()) {
        os << "     " << la.series_note << "\n";
      }
    }
  }
  if (rep.g_side && rep.g_side->flow) {
    const auto& ga = *rep.g_side;
    const auto& f = *ga.flow;
    os << "parameter flow (principal locus #" << *ga.principal_index + 1 << "):\n";
    os << "  alpha0' = " << f.g0.to_string() << "\n";
    for (std::size_t l = 0; l < f.g.size(); ++l) os << "  " << f.variables[l] << "' = " << f.g[l].to_string() << "\n";
    if (ga.kernel) os << "  expansion identities: " << (ga.kernel->ok ? "ok" : "FAIL") << "\n";
    if (ga.nondegeneracy) os << "  nondegeneracy: " << to_string(ga.nondegeneracy->result) << "\n";
    if (ga.degeneration) {
      for (const auto& fl : ga.degeneration->loci) {
        os << "  flow locus: rho = " << (fl.rho ? join(*fl.rho) : join_complex(fl.numeric_rho));
        if (fl.prediction) os << ", predicted lower exponents " << join(*fl.prediction);
        if (!fl.matched_loci.empty()) {
          os << " matched by";
          for (auto m : fl.matched_loci) os << " #" << m + 1;
        } else if (fl.prediction) {
          os << " unmatched";
        }
        os << "\n";
      }
    }
    for (const auto& d : ga.deformed) {
      os << "  deformed field, epsilon = " << d.epsilon.to_string() << ": "
         << (d.matched_exponents ? "locus " + join(*d.matched_locus) + " with " + join(*d.matched_exponents)
                                 : std::string("no locus with the predicted exponents"))
         << "\n";
    }
  } else if (rep.g_side && !rep.g_side->note.empty()) {
    os << "G: " << rep.g_side->note << "\n";
  }
  for (const auto& w : rep.warnings) os << "warning: " << w << "\n";
  for (const auto& v : rep.violations) os << "violation: " << v << "\n";
  return os.str();
}

}  // namespace kovan::report
