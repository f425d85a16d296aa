#include "kovan/field.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "kovan/linalg.hpp"
#include "kovan/newton.hpp"
#include "kovan/roots.hpp"

namespace kovan {

VectorField::VectorField(std::vector<std::string> variables, std::vector<Poly> components)
    : vars_(std::move(variables)) {
  if (components.size() != vars_.size()) {
    throw DimensionMismatch("field has " + std::to_string(components.size()) + " components for " +
                            std::to_string(vars_.size()) + " variables");
  }
  std::set<std::string> seen;
  for (const auto& v : vars_) {
    if (!seen.insert(v).second) throw std::invalid_argument("duplicate variable '" + v + "'");
  }
  universe_.assign(seen.begin(), seen.end());
  slot_.resize(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    slot_[i] = static_cast<std::size_t>(std::lower_bound(universe_.begin(), universe_.end(), vars_[i]) - universe_.begin());
  }
  for (auto& c : components) {
    for (const auto& u : c.used_variables()) {
      if (!seen.count(u)) throw std::invalid_argument("component uses undeclared variable '" + u + "'");
    }
    comps_.push_back(c.over(universe_));
  }
}

bool VectorField::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const Poly& p) { return p.is_zero(); });
}

ExactVector VectorField::evaluate(std::span<const Rational> x) const {
  const auto u = to_universe(x);
  ExactVector out;
  out.reserve(comps_.size());
  for (const auto& c : comps_) out.push_back(c.evaluate(std::span<const Rational>(u)));
  return out;
}

std::vector<std::complex<double>> VectorField::evaluate(std::span<const std::complex<double>> x) const {
  const auto u = to_universe(x);
  std::vector<std::complex<double>> out;
  out.reserve(comps_.size());
  for (const auto& c : comps_) out.push_back(c.evaluate(std::span<const std::complex<double>>(u)));
  return out;
}

std::vector<std::vector<Poly>> VectorField::jacobian() const {
  std::vector<std::vector<Poly>> j(comps_.size());
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    for (const auto& v : vars_) j[i].push_back(comps_[i].derivative(v).over(universe_));
  }
  return j;
}

ExactMatrix VectorField::jacobian_at(std::span<const Rational> x) const {
  const auto u = to_universe(x);
  const auto j = jacobian();
  ExactMatrix out(comps_.size(), vars_.size());
  for (std::size_t r = 0; r < comps_.size(); ++r)
    for (std::size_t c = 0; c < vars_.size(); ++c) out(r, c) = j[r][c].evaluate(std::span<const Rational>(u));
  return out;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  if (a.vars_ != b.vars_) throw DimensionMismatch("fields over different variables");
  std::vector<Poly> c;
  for (std::size_t i = 0; i < a.comps_.size(); ++i) c.push_back(a.comps_[i] + b.comps_[i]);
  return VectorField(a.vars_, std::move(c));
}

VectorField operator*(const Rational& s, const VectorField& v) {
  std::vector<Poly> c;
  for (const auto& p : v.comps_) c.push_back(s * p);
  return VectorField(v.vars_, std::move(c));
}

bool operator==(const VectorField& a, const VectorField& b) {
  return a.vars_ == b.vars_ && a.comps_ == b.comps_;
}

VectorField hamiltonian_to_field(const Poly& hamiltonian, const std::vector<std::string>& variables) {
  if (variables.size() % 2 != 0) {
    throw UnpairedVariable("Hamiltonian fields need (q, p) pairs; got " + std::to_string(variables.size()) +
                           " variables");
  }
  std::vector<Poly> comps;
  for (std::size_t k = 0; k < variables.size(); k += 2) {
    comps.push_back(hamiltonian.derivative(variables[k + 1]));
    comps.push_back(-hamiltonian.derivative(variables[k]));
  }
  return VectorField(variables, std::move(comps));
}

bool Weights::is_primitive() const {
  int g = 0;
  for (int a : weights) g = std::gcd(g, a);
  return g == 1;
}

namespace {

std::vector<long> universe_weights(const VectorField& v, const std::vector<int>& w) {
  if (w.size() != v.dimension()) throw DimensionMismatch("weight tuple has wrong length");
  std::vector<long> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[v.slot(i)] = w[i];
  return out;
}

long dot(const Exponents& e, const std::vector<long>& w) {
  long s = 0;
  for (std::size_t k = 0; k < e.size(); ++k) s += static_cast<long>(e[k]) * w[k];
  return s;
}

}  // namespace

WeightCheck verify_weight(const VectorField& v, const Weights& w) {
  const auto uw = universe_weights(v, w.weights);
  WeightCheck out;
  for (std::size_t i = 0; i < v.dimension(); ++i) {
    const long expected = static_cast<long>(w.weights[i]) + w.degree;
    for (const auto& [e, c] : v[i].terms()) {
      const long d = dot(e, uw);
      if (d != expected) out.violations.push_back({i, e, d, expected});
    }
  }
  out.ok = out.violations.empty();
  return out;
}

std::optional<Weights> WeightInference::first_primitive() const {
  for (const auto& c : certificates) {
    if (c.is_primitive()) return c;
  }
  return std::nullopt;
}

WeightInference infer_weights(const VectorField& v, int degree, int max_weight) {
  WeightInference out;
  out.max_weight = max_weight;
  const std::size_t m = v.dimension();
  if (m == 0 || max_weight < 1) return out;

  // Each monomial x^e of f_i gives sum_j e_j a_j - a_i = degree.
  std::vector<std::vector<Rational>> rows;
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto& [e, c] : v[i].terms()) {
      std::vector<Rational> row(m + 1);
      for (std::size_t j = 0; j < m; ++j) row[j] = Rational(static_cast<long>(e[v.slot(j)]));
      row[i] -= 1;
      row[m] = degree;
      rows.push_back(std::move(row));
    }
  }

  std::vector<std::size_t> free_cols;
  std::vector<std::pair<std::size_t, std::vector<Rational>>> pivot_rows;
  if (rows.empty()) {
    out.degenerate = true;
    for (std::size_t j = 0; j < m; ++j) free_cols.push_back(j);
  } else {
    ExactMatrix aug(rows.size(), m + 1);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c <= m; ++c) aug(r, c) = rows[r][c];
    const Rref red = rref(aug);
    std::vector<bool> is_pivot(m, false);
    for (std::size_t r = 0; r < red.pivots.size(); ++r) {
      if (red.pivots[r] == m) return out;  // inconsistent
      is_pivot[red.pivots[r]] = true;
      std::vector<Rational> row(m + 1);
      for (std::size_t c = 0; c <= m; ++c) row[c] = red.reduced(r, c);
      pivot_rows.emplace_back(red.pivots[r], std::move(row));
    }
    for (std::size_t j = 0; j < m; ++j)
      if (!is_pivot[j]) free_cols.push_back(j);
  }

  constexpr std::size_t kMaxCertificates = 100000;
  std::vector<int> free_vals(free_cols.size(), 1);
  for (;;) {
    std::vector<int> a(m, 0);
    bool valid = true;
    for (std::size_t k = 0; k < free_cols.size(); ++k) a[free_cols[k]] = free_vals[k];
    for (const auto& [col, row] : pivot_rows) {
      Rational val = row[m];
      for (std::size_t k = 0; k < free_cols.size(); ++k) val -= row[free_cols[k]] * Rational(free_vals[k]);
      if (!val.is_integer() || val < Rational(1) || val > Rational(max_weight)) {
        valid = false;
        break;
      }
      a[col] = static_cast<int>(val.numerator().get_si());
    }
    if (valid) {
      out.certificates.push_back({a, degree});
      if (out.certificates.size() >= kMaxCertificates) break;
    }
    std::size_t k = free_vals.size();
    while (k > 0) {
      --k;
      if (free_vals[k] < max_weight) {
        ++free_vals[k];
        break;
      }
      free_vals[k] = 1;
      if (k == 0) {
        k = free_vals.size() + 1;
        break;
      }
    }
    if (free_vals.empty() || k == free_vals.size() + 1) break;
  }
  std::sort(out.certificates.begin(), out.certificates.end(),
            [](const Weights& x, const Weights& y) { return x.weights < y.weights; });
  return out;
}

std::optional<int> infer_degree(const VectorField& v, const std::vector<int>& weights) {
  const auto uw = universe_weights(v, weights);
  std::optional<long> deg;
  for (std::size_t i = 0; i < v.dimension(); ++i) {
    for (const auto& [e, c] : v[i].terms()) {
      const long d = dot(e, uw) - weights[i];
      if (deg && *deg != d) return std::nullopt;
      deg = d;
    }
  }
  if (!deg || *deg < 1) return std::nullopt;
  return static_cast<int>(*deg);
}

std::optional<long> weighted_degree(const Poly& p, const std::vector<std::string>& variables,
                                    const std::vector<int>& weights) {
  if (variables.size() != weights.size()) throw DimensionMismatch("weight tuple has wrong length");
  std::vector<long> uw(p.variables().size(), 0);
  for (std::size_t k = 0; k < p.variables().size(); ++k) {
    auto it = std::find(variables.begin(), variables.end(), p.variables()[k]);
    if (it != variables.end()) uw[k] = weights[static_cast<std::size_t>(it - variables.begin())];
  }
  std::optional<long> deg;
  for (const auto& [e, c] : p.terms()) {
    const long d = dot(e, uw);
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  return deg;
}

VectorField lie_bracket(const VectorField& f, const VectorField& g) {
  if (f.variables() != g.variables()) throw DimensionMismatch("Lie bracket of fields over different variables");
  const auto& vars = f.variables();
  std::vector<Poly> out;
  for (std::size_t i = 0; i < f.dimension(); ++i) {
    Poly acc;
    for (std::size_t j = 0; j < vars.size(); ++j) {
      acc += f[j] * g[i].derivative(vars[j]);
      acc -= g[j] * f[i].derivative(vars[j]);
    }
    out.push_back(std::move(acc));
  }
  return VectorField(vars, std::move(out));
}

IdentityCheck euler_identity_check(const VectorField& v, const Weights& w) {
  if (w.weights.size() != v.dimension()) throw DimensionMismatch("weight tuple has wrong length");
  IdentityCheck out;
  const auto& vars = v.variables();
  for (std::size_t i = 0; i < v.dimension(); ++i) {
    Poly lhs;
    for (std::size_t j = 0; j < vars.size(); ++j) {
      lhs += Rational(w.weights[j]) * (Poly::variable(vars[j]) * v[i].derivative(vars[j]));
    }
    if (!(lhs - Rational(w.weights[i] + w.degree) * v[i]).is_zero()) out.failing_components.push_back(i);
  }
  out.ok = out.failing_components.empty();
  return out;
}

IdentityCheck scaling_identity_check(const VectorField& v, const Weights& w, const Rational& lambda) {
  if (w.weights.size() != v.dimension()) throw DimensionMismatch("weight tuple has wrong length");
  if (lambda.is_zero()) throw std::invalid_argument("scaling factor must be nonzero");
  const auto& vars = v.variables();
  std::map<std::string, Poly> scale;
  for (std::size_t k = 0; k < vars.size(); ++k) scale[vars[k]] = pow(lambda, w.weights[k]) * Poly::variable(vars[k]);
  IdentityCheck out;
  const auto jac = v.jacobian();
  for (std::size_t i = 0; i < v.dimension(); ++i) {
    for (std::size_t j = 0; j < vars.size(); ++j) {
      const Poly lhs = jac[i][j].substitute(scale);
      const Poly rhs = pow(lambda, w.weights[i] + w.degree - w.weights[j]) * jac[i][j];
      if (!(lhs - rhs).is_zero()) {
        out.failing_components.push_back(i);
        break;
      }
    }
  }
  out.ok = out.failing_components.empty();
  return out;
}

std::string_view to_string(A3Result::Status s) {
  switch (s) {
    case A3Result::Status::Ok: return "ok";
    case A3Result::Status::Counterexample: return "counterexample";
    case A3Result::Status::Undecided: return "undecided";
  }
  return "undecided";
}

namespace {

// Branch-and-eliminate search for a zero of a quasi-homogeneous system with a
// prescribed support: every variable in `free` is assumed nonzero.
struct A3State {
  std::vector<Poly> eqs;
  std::vector<std::string> free;
  std::vector<std::pair<std::string, Poly>> subs;  // var := expr, applied in reverse
  std::map<std::string, Rational> fixed;
  bool normalized = false;
};

struct A3Branch {
  enum class Kind { None, Exact, Numeric, Undecided } kind = Kind::None;
  std::map<std::string, Rational> exact;
  std::map<std::string, Complex> numeric;
};

Poly substitute_one(const Poly& p, const std::string& var, const Poly& value) {
  if (p.degree_in(var) <= 0) return p;
  return p.substitute({{var, value}});
}

Complex eval_complex(const Poly& p, const std::map<std::string, Complex>& values) {
  std::vector<Complex> x(p.variables().size(), 0.0);
  for (std::size_t k = 0; k < x.size(); ++k) {
    auto it = values.find(p.variables()[k]);
    if (it != values.end()) x[k] = it->second;
  }
  return p.evaluate(std::span<const Complex>(x));
}

class A3Search {
 public:
  explicit A3Search(const A3Options& opts) : opts_(opts), rng_(opts.rng_seed) {}

  A3Branch solve(A3State s, int depth = 0) {
    if (depth > 64) return {A3Branch::Kind::Undecided, {}, {}};
    for (;;) {
      std::vector<Poly> kept;
      for (auto& e : s.eqs) {
        if (e.is_zero()) continue;
        if (e.size() == 1) return {};  // a single monomial never vanishes on the support
        kept.push_back(std::move(e));
      }
      s.eqs = std::move(kept);
      if (s.eqs.empty()) {
        A3Branch b;
        b.kind = A3Branch::Kind::Exact;
        b.exact = s.fixed;
        for (const auto& v : s.free) b.exact[v] = 1;
        for (auto it = s.subs.rbegin(); it != s.subs.rend(); ++it) {
          std::map<std::string, Poly> bind;
          for (const auto& [k, val] : b.exact) bind[k] = Poly::constant(val);
          b.exact[it->first] = it->second.substitute(bind).constant_term();
        }
        return b;
      }
      if (eliminate_linear(s)) continue;
      if (!s.normalized) {
        const std::string v = s.free.front();
        s.free.erase(s.free.begin());
        s.fixed[v] = 1;
        for (auto& e : s.eqs) e = substitute_one(e, v, Poly::constant(1));
        s.normalized = true;
        continue;
      }
      break;
    }

    for (const auto& e : s.eqs) {
      const auto used = e.used_variables();
      if (used.size() != 1) continue;
      const std::string v = used.front();
      RootSet roots;
      try {
        roots = roots_exact_first(e.over({v}), {opts_.tolerance, opts_.max_iterations});
      } catch (const NumericNonConvergence&) {
        return numeric(s);
      }
      bool saw_undecided = false;
      for (const auto& [r, mult] : roots.rational_roots) {
        if (r.is_zero()) continue;
        A3State child = s;
        child.free.erase(std::find(child.free.begin(), child.free.end(), v));
        child.fixed[v] = r;
        for (auto& eq : child.eqs) eq = substitute_one(eq, v, Poly::constant(r));
        A3Branch b = solve(std::move(child), depth + 1);
        if (b.kind == A3Branch::Kind::Exact) return b;
        if (b.kind != A3Branch::Kind::None) saw_undecided = true;
      }
      if (!roots.numeric_roots.empty() || saw_undecided) return numeric(s);
      return {};
    }
    return numeric(s);
  }

 private:
  bool eliminate_linear(A3State& s) {
    for (std::size_t i = 0; i < s.eqs.size(); ++i) {
      for (const auto& v : s.free) {
        if (s.eqs[i].degree_in(v) != 1) continue;
        const Poly coeff = s.eqs[i].derivative(v);
        if (!coeff.is_constant()) continue;
        const Rational c = coeff.constant_term();
        const Poly rest = s.eqs[i] - c * Poly::variable(v);
        const Poly expr = (Rational(-1) / c) * rest;
        s.subs.emplace_back(v, expr);
        s.free.erase(std::find(s.free.begin(), s.free.end(), v));
        s.eqs.erase(s.eqs.begin() + static_cast<long>(i));
        for (auto& e : s.eqs) e = substitute_one(e, v, expr);
        return true;
      }
    }
    return false;
  }

  A3Branch numeric(const A3State& s) {
    if (s.free.empty()) return {A3Branch::Kind::Undecided, {}, {}};
    const CompiledSystem sys(s.eqs, s.free);
    std::uniform_real_distribution<double> logmag(-1.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    for (int k = 0; k < opts_.seeds_per_branch; ++k) {
      ComplexVector seed(s.free.size());
      for (auto& z : seed) z = std::polar(std::pow(10.0, logmag(rng_)), angle(rng_));
      const NewtonOutcome r = newton_solve(sys, seed, {opts_.tolerance, opts_.max_iterations});
      if (!r.converged) continue;
      if (std::any_of(r.x.begin(), r.x.end(), [](const Complex& z) { return std::abs(z) < 1e-8; })) continue;
      if (auto snapped = snap_rational(r.x)) {
        A3State exact = s;
        for (std::size_t i = 0; i < s.free.size(); ++i) {
          exact.fixed[s.free[i]] = (*snapped)[i];
          for (auto& e : exact.eqs) e = substitute_one(e, s.free[i], Poly::constant((*snapped)[i]));
        }
        exact.free.clear();
        A3Branch b = solve(std::move(exact), 64);
        if (b.kind == A3Branch::Kind::Exact) return b;
      }
      A3Branch b;
      b.kind = A3Branch::Kind::Numeric;
      for (const auto& [k, v] : s.fixed) b.numeric[k] = v.to_double();
      for (std::size_t i = 0; i < s.free.size(); ++i) b.numeric[s.free[i]] = r.x[i];
      for (auto it = s.subs.rbegin(); it != s.subs.rend(); ++it) b.numeric[it->first] = eval_complex(it->second, b.numeric);
      return b;
    }
    return {A3Branch::Kind::Undecided, {}, {}};
  }

  const A3Options& opts_;
  std::mt19937_64 rng_;
};

}  // namespace

A3Result check_A3(const VectorField& f, const Weights& w, const A3Options& opts) {
  const std::size_t m = f.dimension();
  if (w.weights.size() != m) throw DimensionMismatch("weight tuple has wrong length");
  if (m > 16) {
    return {A3Result::Status::Undecided, std::nullopt, std::nullopt, "dimension too large for support enumeration"};
  }
  const auto& vars = f.variables();
  A3Search search(opts);
  std::optional<std::vector<Complex>> numeric_witness;
  bool undecided = false;

  std::vector<unsigned> masks;
  for (unsigned mask = 1; mask < (1u << m); ++mask) masks.push_back(mask);
  std::stable_sort(masks.begin(), masks.end(),
                   [](unsigned a, unsigned b) { return std::popcount(a) < std::popcount(b); });

  for (unsigned mask : masks) {
    A3State s;
    std::map<std::string, Poly> zero;
    for (std::size_t j = 0; j < m; ++j) {
      if (mask & (1u << j)) {
        s.free.push_back(vars[j]);
      } else {
        zero[vars[j]] = Poly();
        s.fixed[vars[j]] = 0;
      }
    }
    for (const auto& c : f.components()) s.eqs.push_back(zero.empty() ? c : c.substitute(zero));
    A3Branch b = search.solve(std::move(s));
    if (b.kind == A3Branch::Kind::Exact) {
      ExactVector x(m);
      for (std::size_t j = 0; j < m; ++j) x[j] = b.exact.count(vars[j]) ? b.exact[vars[j]] : Rational(0);
      const auto fx = f.evaluate(x);
      const bool zero_value = std::all_of(fx.begin(), fx.end(), [](const Rational& r) { return r.is_zero(); });
      const bool nonzero_point = std::any_of(x.begin(), x.end(), [](const Rational& r) { return !r.is_zero(); });
      if (zero_value && nonzero_point) {
        return {A3Result::Status::Counterexample, x, std::nullopt, "exact nonzero zero of the field"};
      }
      undecided = true;
    } else if (b.kind == A3Branch::Kind::Numeric) {
      if (!numeric_witness) {
        std::vector<Complex> x(m);
        for (std::size_t j = 0; j < m; ++j) x[j] = b.numeric.count(vars[j]) ? b.numeric[vars[j]] : Complex(0.0);
        numeric_witness = x;
      }
    } else if (b.kind == A3Branch::Kind::Undecided) {
      undecided = true;
    }
  }
  if (numeric_witness) {
    return {A3Result::Status::Counterexample, std::nullopt, numeric_witness, "numeric nonzero zero of the field"};
  }
  if (undecided) {
    return {A3Result::Status::Undecided, std::nullopt, std::nullopt, "numeric search inconclusive on some support"};
  }
  return {A3Result::Status::Ok, std::nullopt, std::nullopt, "every support pattern excluded exactly"};
}

}  // namespace kovan
