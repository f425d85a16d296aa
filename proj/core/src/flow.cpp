#include "kovan/flow.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "kovan/linalg.hpp"

namespace kovan {

GExpansion g_expansion(const VectorField& g, int gamma, const LaurentSolution& sol, int order) {
  if (order < 0) throw std::invalid_argument("expansion order must be non-negative");
  if (order > sol.truncation) {
    throw TruncationTooShort("expansion to order " + std::to_string(order) + " needs truncation >= " +
                             std::to_string(order) + ", have " + std::to_string(sol.truncation));
  }
  if (g.dimension() != sol.locus.size()) throw DimensionMismatch("G has wrong dimension");
  const std::size_t m = g.dimension();
  std::vector<std::vector<Poly>> y(m, std::vector<Poly>(static_cast<std::size_t>(order) + 1));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= static_cast<std::size_t>(order); ++j) y[i][j] = sol.d[j][i];
  MonomialSeries engine(&y);
  std::vector<std::size_t> handles;
  for (const auto& gi : g.components()) handles.push_back(engine.add(g, gi));
  GExpansion out;
  out.gamma = gamma;
  for (std::size_t k = 0; k <= static_cast<std::size_t>(order); ++k) {
    engine.compute_order(k);
    std::vector<Poly> row;
    for (std::size_t i = 0; i < m; ++i) row.push_back(engine.coefficient(handles[i], k));
    out.g.push_back(std::move(row));
  }
  return out;
}

KernelIdentityReport kernel_identity_check(const VectorField& f, const Weights& w, const VectorField& g,
                                           const LaurentSolution& sol, const GExpansion& ex) {
  KernelIdentityReport rep;
  const std::size_t m = f.dimension();
  const int gamma = ex.gamma;
  if (static_cast<int>(ex.g.size()) < gamma) throw TruncationTooShort("expansion shorter than gamma");
  const ExactMatrix k = kovalevskaya_matrix(f, w, sol.locus);
  auto shifted = [&](const Rational& s) {
    ExactMatrix out = k;
    for (std::size_t i = 0; i < m; ++i) out(i, i) += s;
    return out;
  };
  for (int kk = 0; kk < gamma; ++kk) {
    const auto prod = shifted(Rational(gamma - kk)).apply(ex.g[static_cast<std::size_t>(kk)]);
    if (!std::all_of(prod.begin(), prod.end(), [](const Poly& p) { return p.is_zero(); })) {
      rep.failing_orders.push_back(kk);
    }
    if (kk <= gamma - 2) {
      for (const auto& p : ex.g[static_cast<std::size_t>(kk)])
        if (!p.is_zero()) rep.leading_zero_ok = false;
    }
  }
  const ExactVector gc = g.evaluate(sol.locus);
  const ExactVector kg = shifted(Rational(gamma)).apply(gc);
  rep.locus_identity_ok = std::all_of(kg.begin(), kg.end(), [](const Rational& r) { return r.is_zero(); });

  const auto& top = ex.g[static_cast<std::size_t>(gamma - 1)];
  for (std::size_t i = 0; i < m && !rep.h; ++i) {
    if (!sol.locus[i].is_zero()) rep.h = (Rational(1) / (Rational(w.weights[i]) * sol.locus[i])) * top[i];
  }
  if (rep.h) {
    for (std::size_t i = 0; i < m; ++i) {
      if (!(top[i] - (Rational(w.weights[i]) * sol.locus[i]) * *rep.h).is_zero()) rep.proportional_ok = false;
    }
  } else {
    rep.proportional_ok = false;
  }
  rep.ok = rep.failing_orders.empty() && rep.locus_identity_ok && rep.leading_zero_ok && rep.proportional_ok;
  return rep;
}

VectorField ParamFlow::subsystem() const { return VectorField(variables, g); }

VectorField ParamFlow::full_system() const {
  std::vector<std::string> vars{"alpha0"};
  vars.insert(vars.end(), variables.begin(), variables.end());
  std::vector<Poly> comps{g0};
  comps.insert(comps.end(), g.begin(), g.end());
  return VectorField(std::move(vars), std::move(comps));
}

Weights ParamFlow::full_weights() const {
  std::vector<int> w{-1};
  w.insert(w.end(), kappa.begin(), kappa.end());
  return {w, gamma};
}

ParamFlow param_flow(const VectorField& f, const Weights& w, const VectorField& g, const LaurentSolution& sol) {
  if (classify(sol).kind != SeriesClass::Kind::Principal) {
    throw std::invalid_argument("parameter flow needs a principal Laurent solution");
  }
  const auto gamma = infer_degree(g, w.weights);
  if (!gamma) throw std::invalid_argument("G is not quasi-homogeneous of positive degree for the weights of F");
  const std::size_t m = f.dimension();
  const int kmax = sol.parameter_orders.empty() ? 0 : *std::max_element(sol.parameter_orders.begin(), sol.parameter_orders.end());
  const int needed = std::max(kmax + *gamma, kmax + 1);
  if (needed > sol.truncation) {
    throw TruncationTooShort("parameter flow needs truncation >= " + std::to_string(needed) + ", have " +
                             std::to_string(sol.truncation));
  }
  const GExpansion ex = g_expansion(g, *gamma, sol, needed);
  const auto& top = ex.g[static_cast<std::size_t>(*gamma - 1)];

  ParamFlow flow;
  flow.gamma = *gamma;
  flow.variables = sol.parameters;
  flow.kappa = sol.parameter_orders;
  std::optional<Poly> g0;
  for (std::size_t i = 0; i < m; ++i) {
    if (sol.locus[i].is_zero()) continue;
    Poly candidate = (Rational(1) / (Rational(w.weights[i]) * sol.locus[i])) * top[i];
    if (!g0) {
      g0 = std::move(candidate);
    } else if (!(*g0 - candidate).is_zero()) {
      throw InconsistentG0("alpha0' differs between components 1 and " + std::to_string(i + 1));
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (sol.locus[i].is_zero() && !top[i].is_zero()) {
      throw InconsistentG0("g_{" + std::to_string(i + 1) + "," + std::to_string(*gamma - 1) +
                           "} is nonzero on a vanishing locus component");
    }
  }
  flow.g0 = *g0;
  for (std::size_t l = 0; l < sol.parameters.size(); ++l) {
    const std::size_t i = sol.parameter_anchors[l];
    const int kl = sol.parameter_orders[l];
    const Poly& gik = ex.g[static_cast<std::size_t>(kl + *gamma)][i];
    const Poly& dik = sol.d[static_cast<std::size_t>(kl + 1)][i];
    flow.g.push_back(gik - Rational(w.weights[i] - 1 - kl) * (dik * flow.g0));
  }
  return flow;
}

std::vector<SupportViolation> flow_support_check(const ParamFlow& flow) {
  std::vector<SupportViolation> out;
  auto scan = [&](std::size_t index, const Poly& p, long expected) {
    for (const auto& [e, c] : p.terms()) {
      long deg = 0;
      for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0) continue;
        auto it = std::find(flow.variables.begin(), flow.variables.end(), p.variables()[k]);
        if (it == flow.variables.end()) {
          deg = -1000000;
          break;
        }
        deg += static_cast<long>(e[k]) * flow.kappa[static_cast<std::size_t>(it - flow.variables.begin())];
      }
      if (deg != expected) {
        out.push_back({index, deg, expected});
        return;
      }
    }
  };
  scan(0, flow.g0, flow.gamma - 1);
  for (std::size_t l = 0; l < flow.g.size(); ++l) scan(l + 1, flow.g[l], flow.kappa[l] + flow.gamma);
  return out;
}

std::string_view to_string(Nondegeneracy p) {
  return p == Nondegeneracy::NonzeroCertified ? "nonzero_certified" : "possibly_zero";
}

NondegeneracyReport nondegeneracy_check(const VectorField& g, const LaurentSolution& sol, const ParamFlow& flow) {
  NondegeneracyReport rep;
  rep.g0_identically_zero = flow.g0.is_zero();
  if (!sol.parameter_orders.empty()) {
    const int k1 = *std::min_element(sol.parameter_orders.begin(), sol.parameter_orders.end());
    const ExactMatrix dg = g.jacobian_at(sol.locus);
    const auto prod = dg.apply(sol.d[static_cast<std::size_t>(k1)]);
    if (std::any_of(prod.begin(), prod.end(), [](const Poly& p) { return !p.is_zero(); })) {
      rep.result = Nondegeneracy::NonzeroCertified;
    }
  }
  rep.consistent = !(rep.result == Nondegeneracy::NonzeroCertified && rep.g0_identically_zero);
  return rep;
}

namespace {

std::vector<Rational> sorted(std::vector<Rational> v) {
  std::sort(v.begin(), v.end());
  return v;
}

bool remove_one(std::vector<Rational>& v, const Rational& x) {
  auto it = std::find(v.begin(), v.end(), x);
  if (it == v.end()) return false;
  v.erase(it);
  return true;
}

/// {-1, -gamma} together with gamma * rho, after taking one -1 and one -1/gamma
/// out of the full-flow spectrum rho.
std::optional<std::vector<Rational>> predict(std::vector<Rational> rho, int gamma) {
  if (!remove_one(rho, Rational(-1))) return std::nullopt;
  if (!remove_one(rho, Rational(-1, gamma))) return std::nullopt;
  std::vector<Rational> out{Rational(-1), Rational(-gamma)};
  for (const auto& r : rho) out.push_back(Rational(gamma) * r);
  return sorted(out);
}

bool has_minus_one(const std::vector<Rational>& rho, int gamma) {
  std::vector<Rational> copy = rho;
  return remove_one(copy, Rational(-1)) && remove_one(copy, Rational(-1, gamma));
}

bool minus_one_numeric(const ComplexVector& rho, int gamma) {
  auto count_near = [&](double target) {
    return std::count_if(rho.begin(), rho.end(), [&](const Complex& z) { return std::abs(z - target) < 1e-7; });
  };
  if (gamma == 1) return count_near(-1.0) >= 2;
  return count_near(-1.0) >= 1 && count_near(-1.0 / gamma) >= 1;
}

void match_lower(FlowLocusReport& rep, const std::vector<LowerLocusRef>& lower) {
  if (!rep.prediction) return;
  for (const auto& l : lower) {
    if (sorted(l.exponents) == *rep.prediction) rep.matched_loci.push_back(l.index);
  }
}

ComplexVector to_complex(const ExactVector& x) {
  ComplexVector out;
  for (const auto& r : x) out.emplace_back(r.to_double(), 0.0);
  return out;
}

Complex eval_at(const Poly& p, const std::vector<std::string>& vars, const ComplexVector& x) {
  std::vector<Complex> aligned(p.variables().size(), 0.0);
  for (std::size_t k = 0; k < aligned.size(); ++k) {
    auto it = std::find(vars.begin(), vars.end(), p.variables()[k]);
    if (it != vars.end()) aligned[k] = x[static_cast<std::size_t>(it - vars.begin())];
  }
  return p.evaluate(std::span<const Complex>(aligned));
}

Rational eval_at(const Poly& p, const std::vector<std::string>& vars, const ExactVector& x) {
  std::map<std::string, Poly> bind;
  for (std::size_t k = 0; k < vars.size(); ++k) bind[vars[k]] = Poly::constant(x[k]);
  return p.substitute(bind).constant_term();
}

}  // namespace

DegenerationReport degenerate_gamma1(const ParamFlow& flow, const std::vector<LowerLocusRef>& lower,
                                     const LocusSearchOptions& opts) {
  if (flow.gamma != 1) throw std::invalid_argument("degenerate_gamma1 needs gamma = 1");
  DegenerationReport rep;
  rep.gamma = 1;
  const VectorField sub = flow.subsystem();
  const Weights sw = flow.subsystem_weights();
  if (sub.is_zero()) {
    rep.warnings.push_back("flow subsystem vanishes identically; no loci and no prediction");
    return rep;
  }
  const VectorField full = flow.full_system();
  const Weights fw = flow.full_weights();
  const LocusSearchReport found = find_loci(sub, sw, {}, opts);
  rep.strategies = found.strategies;
  for (const auto& l : found.loci) {
    FlowLocusReport fl;
    fl.reduced_locus = l;
    const KExponentReport kr = k_exponents(sub, sw, l);
    fl.reduced_exponents = kr.rational_exponents();
    IndicialLocus xi;
    if (l.is_exact()) {
      ExactVector x{eval_at(flow.g0, flow.variables, l.exact)};
      x.insert(x.end(), l.exact.begin(), l.exact.end());
      xi.exactness = Exactness::Exact;
      xi.exact = x;
      xi.numeric = to_complex(x);
      fl.exact_flow_locus = x;
      if (!is_indicial_locus(full, fw, x)) rep.warnings.push_back("full flow locus failed exact verification");
    } else {
      ComplexVector x{eval_at(flow.g0, flow.variables, l.numeric)};
      x.insert(x.end(), l.numeric.begin(), l.numeric.end());
      xi.numeric = x;
    }
    fl.flow_loci.push_back(xi.numeric);
    const KExponentReport full_k = k_exponents(full, fw, xi);
    fl.rho = full_k.rational_exponents();
    fl.numeric_rho = full_k.numeric_exponents;
    fl.minus_one_ok = fl.rho ? has_minus_one(*fl.rho, 1) : minus_one_numeric(fl.numeric_rho, 1);
    if (fl.rho) fl.prediction = predict(*fl.rho, 1);
    match_lower(fl, lower);
    rep.loci.push_back(std::move(fl));
  }
  return rep;
}

DegenerationReport degenerate_gamma_ge2(const ParamFlow& flow, const std::vector<LowerLocusRef>& lower,
                                        const LocusSearchOptions& opts) {
  const int gamma = flow.gamma;
  if (gamma < 2) throw std::invalid_argument("degenerate_gamma_ge2 needs gamma >= 2");
  if (flow.g0.is_zero()) throw G0IdenticallyZero("alpha0' vanishes identically; the rescaled system is undefined");
  DegenerationReport rep;
  rep.gamma = gamma;
  const std::size_t n = flow.variables.size();
  const VectorField sub = flow.subsystem();
  const VectorField full = flow.full_system();
  const Weights fw = flow.full_weights();
  const auto& vars = flow.variables;

  // Loci of the full flow, as the indicial equations of a degree-gamma field.
  const LocusSearchReport direct = find_loci(full, fw, {}, opts);
  rep.strategies.emplace_back("full_flow_loci");

  // Rescaled loci: g_i(xi~) + kappa_i xi~_i g0(xi~) = 0 with g0(xi~) != 0.
  std::vector<Poly> eqs;
  for (std::size_t i = 0; i < n; ++i) {
    eqs.push_back(flow.g[i] + Rational(flow.kappa[i]) * (Poly::variable(vars[i]) * flow.g0));
  }
  rep.strategies.emplace_back("rescaled_loci");
  const SystemRoots roots = solve_polynomial_system(eqs, vars, opts);
  std::vector<IndicialLocus> reduced;
  auto add_reduced = [&](IndicialLocus l) {
    for (const auto& r : reduced) {
      if (l.is_exact() && r.is_exact() && l.exact == r.exact) return;
      bool same = true;
      for (std::size_t i = 0; i < n; ++i)
        if (std::abs(l.numeric[i] - r.numeric[i]) > opts.dedup_tolerance * (1.0 + std::abs(r.numeric[i]))) same = false;
      if (same) return;
    }
    reduced.push_back(std::move(l));
  };
  auto exact_root = [&](const ExactVector& x) {
    for (const auto& e : eqs)
      if (!eval_at(e, vars, x).is_zero()) return false;
    return true;
  };
  for (const auto& x : roots.exact) {
    IndicialLocus l;
    l.exactness = Exactness::Exact;
    l.source = LocusSource::StructuredSearch;
    l.exact = x;
    l.numeric = to_complex(x);
    add_reduced(std::move(l));
  }
  for (const auto& x : roots.numeric) {
    IndicialLocus l;
    l.numeric = x;
    if (auto snapped = snap_rational(x, opts.max_denominator); snapped && exact_root(*snapped)) {
      l.exactness = Exactness::Exact;
      l.exact = *snapped;
      l.numeric = to_complex(*snapped);
    }
    add_reduced(std::move(l));
  }

  const CompiledSystem full_eqs(indicial_equations(full, fw), full.variables());
  std::size_t direct_matched = 0;

  for (const auto& l : reduced) {
    FlowLocusReport fl;
    fl.reduced_locus = l;
    if (l.is_exact()) {
      const Rational g0v = eval_at(flow.g0, vars, l.exact);
      if (g0v.is_zero()) {
        rep.warnings.push_back("skipped a rescaled locus with g0 = 0");
        continue;
      }
      const Rational s = Rational(gamma) * g0v;
      fl.xi0_power = s;
      ExactMatrix jt(n, n);
      ExactVector grad(n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) jt(i, j) = eval_at(flow.g[i].derivative(vars[j]), vars, l.exact);
      }
      for (std::size_t j = 0; j < n; ++j) grad[j] = eval_at(flow.g0.derivative(vars[j]), vars, l.exact);
      ExactMatrix block(n, n);
      ExactMatrix kt(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          block(i, j) = jt(i, j) / s;
          kt(i, j) = (jt(i, j) + Rational(flow.kappa[i]) * l.exact[i] * grad[j]) / g0v;
        }
        block(i, i) += Rational(flow.kappa[i], gamma);
        kt(i, i) += Rational(flow.kappa[i]);
      }
      if (auto spec = rational_spectrum(block)) {
        std::vector<Rational> rho = *spec;
        rho.push_back(Rational(-1, gamma));
        fl.rho = sorted(rho);
        fl.minus_one_ok = has_minus_one(*fl.rho, gamma);
        fl.prediction = predict(*fl.rho, gamma);
      }
      fl.reduced_exponents = rational_spectrum(kt);
      if (fl.rho && fl.reduced_exponents) {
        std::vector<Rational> rest = *fl.rho;
        remove_one(rest, Rational(-1, gamma));
        remove_one(rest, Rational(-1));
        std::vector<Rational> expected{Rational(-1)};
        for (const auto& r : rest) expected.push_back(Rational(gamma) * r);
        fl.rescaled_spectrum_ok = sorted(expected) == *fl.reduced_exponents;
      }

      // The gamma loci xi of the full flow over this xi~, with the similarity check.
      const double sd = s.to_double();
      double worst = 0.0;
      for (int r = 0; r < gamma; ++r) {
        const Complex xi0 = std::polar(std::pow(std::abs(sd), 1.0 / gamma),
                                       (std::arg(Complex(sd, 0.0)) + 2.0 * M_PI * r) / gamma);
        ComplexVector xi{xi0};
        for (std::size_t i = 0; i < n; ++i) xi.push_back(std::pow(xi0, -flow.kappa[i]) * l.numeric[i]);
        if (full_eqs.scaled_residual(xi) > 1e-9) rep.warnings.push_back("reconstructed flow locus has a large residual");
        for (const auto& d : direct.loci) {
          bool same = true;
          for (std::size_t i = 0; i <= n; ++i)
            if (std::abs(d.numeric[i] - xi[i]) > 1e-6 * (1.0 + std::abs(xi[i]))) same = false;
          if (same) ++direct_matched;
        }
        fl.flow_loci.push_back(xi);

        const Matrix<Complex> kg = kovalevskaya_matrix(full, fw, xi);
        const Complex a = (static_cast<double>(gamma) * eval_at(flow.g0, vars, ComplexVector(xi.begin() + 1, xi.end())));
        Matrix<Complex> p(n + 1, n + 1), pinv(n + 1, n + 1);
        p(0, 0) = a;
        pinv(0, 0) = 1.0 / a;
        for (std::size_t i = 0; i < n; ++i) {
          const Complex vi = static_cast<double>(flow.kappa[i]) * xi[i + 1];
          p(i + 1, 0) = -vi;
          pinv(i + 1, 0) = vi / a;
          p(i + 1, i + 1) = 1.0;
          pinv(i + 1, i + 1) = 1.0;
        }
        const Matrix<Complex> conj = pinv * kg * p;
        double err = std::abs(conj(0, 0) + 1.0);
        for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(conj(i + 1, 0)));
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            const Complex q = std::pow(xi0, flow.kappa[j] - flow.kappa[i]);
            const Complex lhs = q * kt(i, j).to_double();
            err = std::max(err, std::abs(lhs - static_cast<double>(gamma) * conj(i + 1, j + 1)) /
                                    (1.0 + std::abs(lhs)));
          }
        }
        worst = std::max(worst, err);
      }
      fl.conjugacy_error = worst;
      fl.conjugacy_ok = worst < 1e-8;
      if (fl.rho) {
        for (const auto& r : *fl.rho) fl.numeric_rho.emplace_back(r.to_double(), 0.0);
      }
    } else {
      const Complex g0v = eval_at(flow.g0, vars, l.numeric);
      if (std::abs(g0v) < 1e-12) {
        rep.warnings.push_back("skipped a numeric rescaled locus with g0 = 0");
        continue;
      }
      const Complex s = static_cast<double>(gamma) * g0v;
      const Complex xi0 = std::pow(s, 1.0 / gamma);
      ComplexVector xi{xi0};
      for (std::size_t i = 0; i < n; ++i) xi.push_back(std::pow(xi0, -flow.kappa[i]) * l.numeric[i]);
      fl.flow_loci.push_back(xi);
      IndicialLocus nl;
      nl.numeric = xi;
      const KExponentReport kr = k_exponents(full, fw, nl);
      fl.numeric_rho = kr.numeric_exponents;
      fl.minus_one_ok = minus_one_numeric(fl.numeric_rho, gamma);
      rep.warnings.push_back("rescaled locus is numeric; exponents are not certified");
    }
    match_lower(fl, lower);
    rep.loci.push_back(std::move(fl));
  }
  for (const auto& d : direct.loci) {
    const Complex g0v = eval_at(flow.g0, vars, ComplexVector(d.numeric.begin() + 1, d.numeric.end()));
    if (std::abs(g0v) < 1e-12) rep.warnings.push_back("full flow locus with g0 = 0 skipped");
  }
  if (direct_matched < direct.loci.size()) {
    std::size_t usable = 0;
    for (const auto& d : direct.loci) {
      if (std::abs(eval_at(flow.g0, vars, ComplexVector(d.numeric.begin() + 1, d.numeric.end()))) >= 1e-12) ++usable;
    }
    if (direct_matched < usable) rep.warnings.push_back("some directly found flow loci have no rescaled counterpart");
  }
  return rep;
}

DegenerationReport degenerate(const ParamFlow& flow, const std::vector<LowerLocusRef>& lower,
                              const LocusSearchOptions& opts) {
  return flow.gamma == 1 ? degenerate_gamma1(flow, lower, opts) : degenerate_gamma_ge2(flow, lower, opts);
}

void match_g_exponents(DegenerationReport& report, const std::vector<std::vector<Rational>>& g_exponents) {
  for (auto& fl : report.loci) {
    if (!fl.rho) continue;
    fl.matches_g_locus = std::any_of(g_exponents.begin(), g_exponents.end(),
                                     [&](const std::vector<Rational>& e) { return sorted(e) == *fl.rho; });
  }
}

DeformedFieldReport deformed_field_check(const VectorField& f, const Weights& w, const VectorField& g,
                                         const Rational& epsilon, const Rational& k1,
                                         const std::vector<Rational>& prediction, const LocusSearchOptions& opts) {
  if ((epsilon + k1).is_zero()) throw std::invalid_argument("epsilon + k1 must be nonzero");
  DeformedFieldReport rep{epsilon, k1, f + (Rational(1) / (epsilon + k1)) * g, {}, {}, std::nullopt};
  rep.loci = find_loci(rep.field, w, {}, opts).loci;
  const auto want = sorted(prediction);
  for (std::size_t i = 0; i < rep.loci.size(); ++i) {
    const auto ex = k_exponents(rep.field, w, rep.loci[i]).rational_exponents();
    if (!rep.match && ex && *ex == want) rep.match = i;
    rep.exponents.push_back(ex);
  }
  return rep;
}

PairingReport hamiltonian_pairing_check(const std::vector<Rational>& exponents, long hamiltonian_degree,
                                        const Weights& w) {
  PairingReport rep;
  const Rational d(hamiltonian_degree - 1);
  std::vector<Rational> mirrored;
  for (const auto& k : exponents) mirrored.push_back(d - k);
  rep.closed = sorted(mirrored) == sorted(exponents);
  rep.weight_pairs_ok = w.weights.size() % 2 == 0;
  for (std::size_t i = 0; i + 1 < w.weights.size(); i += 2) {
    if (w.weights[i] + w.weights[i + 1] != hamiltonian_degree - 1) rep.weight_pairs_ok = false;
  }
  rep.ok = rep.closed && rep.weight_pairs_ok;
  return rep;
}

}  // namespace kovan
