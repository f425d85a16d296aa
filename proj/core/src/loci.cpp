#include "kovan/loci.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "kovan/linalg.hpp"

namespace kovan {

std::string_view to_string(Exactness e) { return e == Exactness::Exact ? "exact" : "numeric"; }

std::string_view to_string(LocusSource s) {
  switch (s) {
    case LocusSource::UserSeed: return "user_seed";
    case LocusSource::Newton: return "newton";
    case LocusSource::StructuredSearch: return "structured_search";
  }
  return "newton";
}

std::string_view to_string(LocusClass c) {
  switch (c) {
    case LocusClass::Principal: return "principal";
    case LocusClass::Lower: return "lower";
    case LocusClass::NonPainleve: return "non_painleve";
  }
  return "non_painleve";
}

std::vector<Poly> indicial_equations(const VectorField& v, const Weights& w) {
  if (w.weights.size() != v.dimension()) throw DimensionMismatch("weight tuple has wrong length");
  std::vector<Poly> eqs;
  for (std::size_t i = 0; i < v.dimension(); ++i) {
    eqs.push_back(Rational(w.degree) * v[i] + Rational(w.weights[i]) * Poly::variable(v.variables()[i]));
  }
  return eqs;
}

bool is_indicial_locus(const VectorField& v, const Weights& w, const ExactVector& c) {
  if (c.size() != v.dimension()) return false;
  if (std::all_of(c.begin(), c.end(), [](const Rational& r) { return r.is_zero(); })) return false;
  const auto fx = v.evaluate(c);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!(Rational(w.degree) * fx[i] + Rational(w.weights[i]) * c[i]).is_zero()) return false;
  }
  return true;
}

namespace {

// Exact enumeration of the roots of a polynomial system on a fixed support
// (every variable in `free` nonzero). Linear elimination and rational roots of
// univariate equations only; anything else marks the support incomplete.
struct SupportState {
  std::vector<Poly> eqs;
  std::vector<std::string> free;
  std::vector<std::pair<std::string, Poly>> subs;
  std::map<std::string, Rational> fixed;
};

struct SupportResult {
  std::vector<std::map<std::string, Rational>> solutions;
  bool complete = true;
};

Poly substitute_one(const Poly& p, const std::string& var, const Poly& value) {
  if (p.degree_in(var) <= 0) return p;
  return p.substitute({{var, value}});
}

void enumerate_support(SupportState s, SupportResult& out, const NumericOptions& nopts, int depth) {
  if (depth > 32) {
    out.complete = false;
    return;
  }
  for (;;) {
    std::vector<Poly> kept;
    for (auto& e : s.eqs) {
      if (e.is_zero()) continue;
      if (e.size() == 1) return;
      kept.push_back(std::move(e));
    }
    s.eqs = std::move(kept);
    if (s.eqs.empty()) {
      if (!s.free.empty()) {
        out.complete = false;  // positive-dimensional piece
        return;
      }
      std::map<std::string, Rational> sol = s.fixed;
      for (auto it = s.subs.rbegin(); it != s.subs.rend(); ++it) {
        std::map<std::string, Poly> bind;
        for (const auto& [k, val] : sol) bind[k] = Poly::constant(val);
        const Rational value = it->second.substitute(bind).constant_term();
        if (value.is_zero()) return;  // belongs to a smaller support
        sol[it->first] = value;
      }
      out.solutions.push_back(std::move(sol));
      return;
    }
    bool eliminated = false;
    for (std::size_t i = 0; i < s.eqs.size() && !eliminated; ++i) {
      for (const auto& v : s.free) {
        if (s.eqs[i].degree_in(v) != 1) continue;
        const Poly coeff = s.eqs[i].derivative(v);
        if (!coeff.is_constant()) continue;
        const Rational c = coeff.constant_term();
        const Poly expr = (Rational(-1) / c) * (s.eqs[i] - c * Poly::variable(v));
        const std::string name = v;
        s.subs.emplace_back(name, expr);
        s.free.erase(std::find(s.free.begin(), s.free.end(), name));
        s.eqs.erase(s.eqs.begin() + static_cast<long>(i));
        for (auto& e : s.eqs) e = substitute_one(e, name, expr);
        eliminated = true;
        break;
      }
    }
    if (!eliminated) break;
  }
  for (const auto& e : s.eqs) {
    const auto used = e.used_variables();
    if (used.size() != 1) continue;
    const std::string v = used.front();
    RootSet roots;
    try {
      roots = roots_exact_first(e.over({v}), nopts);
    } catch (const NumericNonConvergence&) {
      out.complete = false;
      return;
    }
    if (!roots.numeric_roots.empty() || !roots.residual_factor.is_constant()) out.complete = false;
    for (const auto& [r, mult] : roots.rational_roots) {
      if (r.is_zero()) continue;
      SupportState child = s;
      child.free.erase(std::find(child.free.begin(), child.free.end(), v));
      child.fixed[v] = r;
      for (auto& eq : child.eqs) eq = substitute_one(eq, v, Poly::constant(r));
      enumerate_support(std::move(child), out, nopts, depth + 1);
    }
    return;
  }
  out.complete = false;
}

bool close(const ComplexVector& a, const ComplexVector& b, double tol) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > tol * (1.0 + std::abs(a[i]))) return false;
  }
  return true;
}

ComplexVector to_complex(const ExactVector& x) {
  ComplexVector out;
  for (const auto& r : x) out.emplace_back(r.to_double(), 0.0);
  return out;
}

class LocusCollector {
 public:
  explicit LocusCollector(double tol) : tol_(tol) {}

  void add(IndicialLocus l) {
    for (auto& existing : loci_) {
      if (l.is_exact() && existing.is_exact()) {
        if (l.exact == existing.exact) return;
        continue;
      }
      if (close(existing.numeric, l.numeric, tol_)) {
        if (l.is_exact() && !existing.is_exact()) existing = std::move(l);
        return;
      }
    }
    loci_.push_back(std::move(l));
  }

  std::vector<IndicialLocus> take() { return std::move(loci_); }

 private:
  double tol_;
  std::vector<IndicialLocus> loci_;
};

std::vector<bool> support_of(const IndicialLocus& l) {
  std::vector<bool> s;
  for (std::size_t i = 0; i < l.numeric.size(); ++i) {
    s.push_back(l.is_exact() ? !l.exact[i].is_zero() : std::abs(l.numeric[i]) > 1e-10);
  }
  return s;
}

bool locus_order(const IndicialLocus& a, const IndicialLocus& b) {
  if (a.is_exact() != b.is_exact()) return a.is_exact();
  const auto sa = support_of(a);
  const auto sb = support_of(b);
  if (sa != sb) return sa > sb;
  if (a.is_exact()) return a.exact < b.exact;
  for (std::size_t i = 0; i < a.numeric.size(); ++i) {
    if (a.numeric[i].real() != b.numeric[i].real()) return a.numeric[i].real() < b.numeric[i].real();
    if (a.numeric[i].imag() != b.numeric[i].imag()) return a.numeric[i].imag() < b.numeric[i].imag();
  }
  return false;
}

}  // namespace

SystemRoots solve_polynomial_system(const std::vector<Poly>& equations, const std::vector<std::string>& unknowns,
                                    const LocusSearchOptions& opts) {
  const std::size_t m = unknowns.size();
  if (m > 16) throw std::invalid_argument("too many unknowns for support enumeration");
  const NewtonOptions nopts{opts.tolerance, opts.max_iterations};
  const NumericOptions ropts{opts.tolerance, opts.max_iterations};
  SystemRoots out;
  std::vector<unsigned> incomplete;
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    SupportState s;
    std::map<std::string, Poly> zero;
    for (std::size_t j = 0; j < m; ++j) {
      if (mask & (1u << j)) {
        s.free.push_back(unknowns[j]);
      } else {
        zero[unknowns[j]] = Poly();
        s.fixed[unknowns[j]] = 0;
      }
    }
    for (const auto& e : equations) s.eqs.push_back(zero.empty() ? e : e.substitute(zero));
    SupportResult res;
    enumerate_support(std::move(s), res, ropts, 0);
    for (const auto& sol : res.solutions) {
      ExactVector c(m);
      for (std::size_t j = 0; j < m; ++j) c[j] = sol.at(unknowns[j]);
      out.exact.push_back(std::move(c));
    }
    if (!res.complete) incomplete.push_back(mask);
  }
  out.numeric_patterns = incomplete.size();

  std::mt19937_64 rng(opts.rng_seed);
  std::uniform_real_distribution<double> logmag(-1.0, 2.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  for (unsigned mask : incomplete) {
    std::vector<std::string> free;
    std::vector<std::size_t> index;
    std::map<std::string, Poly> zero;
    for (std::size_t j = 0; j < m; ++j) {
      if (mask & (1u << j)) {
        free.push_back(unknowns[j]);
        index.push_back(j);
      } else {
        zero[unknowns[j]] = Poly();
      }
    }
    std::vector<Poly> restricted;
    for (const auto& e : equations) {
      Poly r = zero.empty() ? e : e.substitute(zero);
      if (!r.is_zero()) restricted.push_back(std::move(r));
    }
    if (restricted.empty()) continue;
    const CompiledSystem sys(restricted, free);
    for (int k = 0; k < opts.seeds_per_pattern; ++k) {
      ComplexVector seed(free.size());
      for (auto& z : seed) z = std::polar(std::pow(10.0, logmag(rng)), angle(rng));
      const NewtonOutcome r = newton_solve(sys, seed, nopts);
      if (!r.converged) continue;
      if (std::any_of(r.x.begin(), r.x.end(), [](const Complex& z) { return std::abs(z) < 1e-8; })) continue;
      ComplexVector x(m, 0.0);
      for (std::size_t t = 0; t < index.size(); ++t) x[index[t]] = r.x[t];
      out.numeric.push_back(std::move(x));
    }
  }
  return out;
}

LocusSearchReport find_loci(const VectorField& v, const Weights& w, const std::vector<std::vector<SeedValue>>& seeds,
                            const LocusSearchOptions& opts) {
  const std::size_t m = v.dimension();
  if (w.weights.size() != m) throw DimensionMismatch("weight tuple has wrong length");
  LocusSearchReport report;
  const auto eqs = indicial_equations(v, w);
  const auto& vars = v.variables();
  const NewtonOptions nopts{opts.tolerance, opts.max_iterations};
  const CompiledSystem full(eqs, vars);
  LocusCollector collector(opts.dedup_tolerance);

  auto accept_numeric = [&](const ComplexVector& x, LocusSource source) {
    if (std::all_of(x.begin(), x.end(), [](const Complex& z) { return std::abs(z) < 1e-8; })) return;
    IndicialLocus l;
    l.source = source;
    l.numeric = x;
    l.residual = full.scaled_residual(x);
    if (auto snapped = snap_rational(x, opts.max_denominator)) {
      if (is_indicial_locus(v, w, *snapped)) {
        l.exactness = Exactness::Exact;
        l.exact = *snapped;
        l.numeric = to_complex(*snapped);
        l.residual = 0.0;
      }
    }
    collector.add(std::move(l));
  };

  if (!seeds.empty()) {
    report.strategies.emplace_back("user_seeds");
    for (const auto& seed : seeds) {
      if (seed.size() != m) throw std::invalid_argument("seed has wrong dimension");
      const bool all_exact = std::all_of(seed.begin(), seed.end(),
                                         [](const SeedValue& s) { return std::holds_alternative<Rational>(s); });
      ComplexVector start;
      ExactVector exact;
      for (const auto& s : seed) {
        if (std::holds_alternative<Rational>(s)) {
          exact.push_back(std::get<Rational>(s));
          start.emplace_back(exact.back().to_double(), 0.0);
        } else {
          start.emplace_back(std::get<double>(s), 0.0);
        }
      }
      if (all_exact && is_indicial_locus(v, w, exact)) {
        IndicialLocus l;
        l.exactness = Exactness::Exact;
        l.source = LocusSource::UserSeed;
        l.exact = exact;
        l.numeric = to_complex(exact);
        collector.add(std::move(l));
        continue;
      }
      const NewtonOutcome r = newton_solve(full, start, nopts);
      if (r.converged) accept_numeric(r.x, LocusSource::UserSeed);
    }
  }

  report.strategies.emplace_back("structured_search");
  const SystemRoots roots = solve_polynomial_system(eqs, vars, opts);
  for (const auto& c : roots.exact) {
    if (!is_indicial_locus(v, w, c)) continue;
    IndicialLocus l;
    l.exactness = Exactness::Exact;
    l.source = LocusSource::StructuredSearch;
    l.exact = c;
    l.numeric = to_complex(c);
    collector.add(std::move(l));
  }
  report.numeric_patterns = roots.numeric_patterns;
  if (roots.numeric_patterns > 0) report.strategies.emplace_back("newton");
  for (const auto& x : roots.numeric) accept_numeric(x, LocusSource::Newton);

  report.loci = collector.take();
  std::sort(report.loci.begin(), report.loci.end(), locus_order);
  if (report.loci.empty() && opts.throw_if_empty) throw NoLocusFound("no indicial locus found");
  return report;
}

ExactMatrix kovalevskaya_matrix(const VectorField& v, const Weights& w, const ExactVector& c) {
  ExactMatrix k = v.jacobian_at(c);
  for (std::size_t i = 0; i < v.dimension(); ++i) k(i, i) += Rational(w.weights[i], w.degree);
  return k;
}

Matrix<Complex> kovalevskaya_matrix(const VectorField& v, const Weights& w, const ComplexVector& c) {
  const auto u = v.to_universe(std::span<const Complex>(c));
  const auto j = v.jacobian();
  const std::size_t m = v.dimension();
  Matrix<Complex> k(m, m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t s = 0; s < m; ++s) k(r, s) = j[r][s].evaluate(std::span<const Complex>(u));
    k(r, r) += static_cast<double>(w.weights[r]) / w.degree;
  }
  return k;
}

namespace {

void sort_complex(ComplexVector& z) {
  std::sort(z.begin(), z.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

LocusClass classify_exponents(const std::vector<Complex>& values, const std::optional<bool>& semisimple) {
  bool removed_minus_one = false;
  bool all_positive_int = true;
  for (const auto& z : values) {
    const double re = std::round(z.real());
    if (std::abs(z.imag()) > 1e-8 || std::abs(z.real() - re) > 1e-8) return LocusClass::NonPainleve;
    if (!removed_minus_one && re == -1.0) {
      removed_minus_one = true;
      continue;
    }
    if (re <= 0.0) all_positive_int = false;
  }
  if (semisimple.has_value() && !*semisimple) return LocusClass::NonPainleve;
  return all_positive_int ? LocusClass::Principal : LocusClass::Lower;
}

}  // namespace

std::optional<std::vector<Rational>> KExponentReport::rational_exponents() const {
  if (!exact || !exponents.all_rational()) return std::nullopt;
  std::vector<Rational> out;
  for (const auto& [r, mult] : exponents.rational_roots)
    for (int k = 0; k < mult; ++k) out.push_back(r);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<long> KExponentReport::resonances() const {
  std::vector<long> out;
  if (exact) {
    for (const auto& [r, mult] : exponents.rational_roots) {
      if (r.is_integer() && r.sign() > 0)
        for (int k = 0; k < mult; ++k) out.push_back(r.numerator().get_si());
    }
  } else {
    for (const auto& z : numeric_exponents) {
      const double re = std::round(z.real());
      if (re > 0 && std::abs(z.real() - re) < 1e-8 && std::abs(z.imag()) < 1e-8) out.push_back(static_cast<long>(re));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::vector<Rational>> rational_spectrum(const ExactMatrix& m) {
  const RootSet roots = roots_exact_first(charpoly(m));
  if (!roots.all_rational()) return std::nullopt;
  std::vector<Rational> out;
  for (const auto& [r, mult] : roots.rational_roots)
    for (int k = 0; k < mult; ++k) out.push_back(r);
  std::sort(out.begin(), out.end());
  return out;
}

KExponentReport k_exponents(const VectorField& v, const Weights& w, const IndicialLocus& c, const NumericOptions& opts) {
  KExponentReport rep;
  const std::size_t m = v.dimension();
  rep.exact = c.is_exact();
  if (rep.exact) {
    rep.matrix = kovalevskaya_matrix(v, w, c.exact);
    rep.charpoly = charpoly(rep.matrix);
    rep.exponents = roots_exact_first(rep.charpoly, opts);
    rep.numeric_exponents = rep.exponents.values();
    for (std::size_t i = 0; i < m; ++i) rep.minus_one_eigenvector.push_back(Rational(w.weights[i]) * c.exact[i]);
    const ExactVector kv = rep.matrix.apply(rep.minus_one_eigenvector);
    rep.minus_one_verified = true;
    for (std::size_t i = 0; i < m; ++i) {
      if (kv[i] != -rep.minus_one_eigenvector[i]) rep.minus_one_verified = false;
    }
    bool semisimple = true;
    for (const auto& [r, mult] : rep.exponents.rational_roots) {
      if (r.is_zero()) rep.has_zero_exponent = true;
      if (!(r.is_integer() && r.sign() > 0) || mult == 1) continue;
      ExactMatrix shifted = rep.matrix;
      for (std::size_t i = 0; i < m; ++i) shifted(i, i) -= r;
      if (m - rank(shifted) != static_cast<std::size_t>(mult)) semisimple = false;
    }
    rep.semisimple_at_resonances = semisimple;
    rep.numeric_matrix = Matrix<Complex>(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) rep.numeric_matrix(i, j) = rep.matrix(i, j).to_double();
  } else {
    rep.numeric_matrix = kovalevskaya_matrix(v, w, c.numeric);
    const auto coeffs = charpoly_coefficients(rep.numeric_matrix);
    for (const auto& root : polynomial_roots(coeffs, opts))
      for (int k = 0; k < root.multiplicity; ++k) rep.numeric_exponents.push_back(root.value);
    ComplexVector ev(m);
    double err = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < m; ++i) ev[i] = static_cast<double>(w.weights[i]) * c.numeric[i];
    const auto kv = rep.numeric_matrix.apply(ev);
    for (std::size_t i = 0; i < m; ++i) {
      err = std::max(err, std::abs(kv[i] + ev[i]));
      scale = std::max(scale, std::abs(ev[i]));
    }
    rep.minus_one_verified = err <= 1e-8 * (1.0 + scale);
    for (const auto& z : rep.numeric_exponents)
      if (std::abs(z) < 1e-8) rep.has_zero_exponent = true;
  }
  sort_complex(rep.numeric_exponents);
  rep.classification = classify_exponents(rep.numeric_exponents, rep.semisimple_at_resonances);
  return rep;
}

TransformReport transform_check(const VectorField& v, const Weights& w, const std::vector<Poly>& phi,
                                const std::vector<std::string>& new_variables, const ExactVector& new_locus) {
  const std::size_t m = v.dimension();
  if (phi.size() != m || new_variables.size() != m || new_locus.size() != m) {
    throw DimensionMismatch("transform has wrong dimension");
  }
  TransformReport rep;
  const auto& old_vars = v.variables();

  std::map<std::string, Poly> compose;
  for (std::size_t i = 0; i < m; ++i) compose[old_vars[i]] = phi[i];
  std::vector<Poly> f_phi;
  for (const auto& f : v.components()) f_phi.push_back(f.substitute(compose));

  Matrix<Poly> dphi(m, m, Poly());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) dphi(i, j) = phi[i].derivative(new_variables[j]);

  // Adjugate and determinant by cofactor expansion (m is tiny).
  std::function<Poly(const std::vector<std::size_t>&, const std::vector<std::size_t>&)> minor_det =
      [&](const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) -> Poly {
    if (rows.empty()) return Poly::constant(1);
    Poly acc;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      std::vector<std::size_t> r2(rows.begin() + 1, rows.end());
      std::vector<std::size_t> c2 = cols;
      c2.erase(c2.begin() + static_cast<long>(k));
      const Poly term = dphi(rows[0], cols[k]) * minor_det(r2, c2);
      if (k % 2 == 0) acc += term; else acc -= term;
    }
    return acc;
  };
  std::vector<std::size_t> all(m);
  for (std::size_t i = 0; i < m; ++i) all[i] = i;
  rep.denominator = minor_det(all, all);
  std::vector<std::vector<Poly>> adj(m, std::vector<Poly>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<std::size_t> rows, cols;
      for (std::size_t k = 0; k < m; ++k) {
        if (k != j) rows.push_back(k);
        if (k != i) cols.push_back(k);
      }
      Poly cof = minor_det(rows, cols);
      adj[i][j] = (i + j) % 2 == 0 ? cof : -cof;
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    Poly acc;
    for (std::size_t j = 0; j < m; ++j) acc += adj[i][j] * f_phi[j];
    rep.numerator.push_back(std::move(acc));
  }

  std::map<std::string, Rational> at;
  for (std::size_t i = 0; i < m; ++i) at[new_variables[i]] = new_locus[i];
  auto eval_at = [&](const Poly& p) {
    std::map<std::string, Poly> bind;
    for (const auto& [k, val] : at) bind[k] = Poly::constant(val);
    return p.substitute(bind).constant_term();
  };
  const Rational d = eval_at(rep.denominator);
  if (d.is_zero()) throw SingularJacobian("transform Jacobian is singular at the new locus");

  for (const auto& p : phi) rep.image_locus.push_back(eval_at(p));

  bool phi_qh = true;
  for (std::size_t i = 0; i < m; ++i) {
    const auto deg = weighted_degree(phi[i], new_variables, w.weights);
    if (!phi[i].is_zero() && (!deg || *deg != w.weights[i])) phi_qh = false;
  }
  rep.phi_quasi_homogeneous = phi_qh;

  if (rep.denominator.is_constant()) {
    const Rational inv = Rational(1) / rep.denominator.constant_term();
    std::vector<Poly> comps;
    for (const auto& n : rep.numerator) comps.push_back(inv * n);
    rep.polynomial_field = VectorField(new_variables, std::move(comps));
    rep.field_quasi_homogeneous = verify_weight(*rep.polynomial_field, w).ok;
  }

  // d/dy_j (N_i / d) = (dN_i/dy_j d - N_i dd/dy_j) / d^2 at the new locus.
  rep.transformed_matrix = ExactMatrix(m, m);
  bool verified = true;
  for (std::size_t i = 0; i < m; ++i) {
    const Rational ni = eval_at(rep.numerator[i]);
    if (!(ni / d + Rational(w.weights[i], w.degree) * new_locus[i]).is_zero()) verified = false;
    for (std::size_t j = 0; j < m; ++j) {
      const Rational dn = eval_at(rep.numerator[i].derivative(new_variables[j]));
      const Rational dd = eval_at(rep.denominator.derivative(new_variables[j]));
      rep.transformed_matrix(i, j) = (dn * d - ni * dd) / (d * d);
    }
    rep.transformed_matrix(i, i) += Rational(w.weights[i], w.degree);
  }
  rep.new_locus_verified = verified;
  rep.original_matrix = kovalevskaya_matrix(v, w, rep.image_locus);
  rep.exponents_equal = charpoly(rep.original_matrix) == charpoly(rep.transformed_matrix);
  return rep;
}

}  // namespace kovan
