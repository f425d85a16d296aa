#include "kovan/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kovan/linalg.hpp"

namespace kovan {

namespace {
constexpr std::size_t kNoParent = std::numeric_limits<std::size_t>::max();
}

std::size_t MonomialSeries::node_for(const Exponents& declared) {
  auto it = index_.find(declared);
  if (it != index_.end()) return it->second;
  std::size_t parent = kNoParent;
  std::size_t var = 0;
  auto k = std::find_if(declared.begin(), declared.end(), [](std::uint32_t e) { return e > 0; });
  if (k != declared.end()) {
    var = static_cast<std::size_t>(k - declared.begin());
    Exponents reduced = declared;
    --reduced[var];
    parent = node_for(reduced);
  }
  nodes_.push_back({parent, var, {}});
  index_.emplace(declared, nodes_.size() - 1);
  return nodes_.size() - 1;
}

std::size_t MonomialSeries::add(const VectorField& field, const Poly& p) {
  const Poly q = p.over(field.universe());
  std::vector<std::pair<std::size_t, Rational>> terms;
  for (const auto& [e, c] : q.terms()) {
    Exponents declared(field.dimension());
    for (std::size_t i = 0; i < field.dimension(); ++i) declared[i] = e[field.slot(i)];
    terms.emplace_back(node_for(declared), c);
  }
  polys_.push_back(std::move(terms));
  return polys_.size() - 1;
}

void MonomialSeries::compute_order(std::size_t j) {
  const auto& y = *y_;
  for (auto& node : nodes_) {
    if (node.coeffs.size() <= j) node.coeffs.resize(j + 1);
    if (node.parent == kNoParent) {
      node.coeffs[j] = j == 0 ? Poly::constant(1) : Poly();
      continue;
    }
    const auto& parent = nodes_[node.parent].coeffs;
    const auto& series = y[node.var];
    Poly acc;
    for (std::size_t l = 0; l <= j; ++l) {
      if (parent[l].is_zero() || series[j - l].is_zero()) continue;
      acc += parent[l] * series[j - l];
    }
    node.coeffs[j] = std::move(acc);
  }
}

Poly MonomialSeries::coefficient(std::size_t handle, std::size_t j) const {
  Poly acc;
  for (const auto& [node, c] : polys_.at(handle)) {
    const auto& coeffs = nodes_[node].coeffs;
    if (j >= coeffs.size()) throw std::out_of_range("series order not computed");
    if (!coeffs[j].is_zero()) acc += c * coeffs[j];
  }
  return acc;
}

std::string parameter_name(std::size_t l) { return "alpha" + std::to_string(l); }

int default_truncation(const KExponentReport& k, std::optional<int> gamma) {
  const auto res = k.resonances();
  const int kmax = res.empty() ? 1 : static_cast<int>(res.back());
  return 2 * kmax + (gamma ? *gamma : 0);
}

LaurentSolution build_series(const VectorField& v, const Weights& w, const IndicialLocus& c, int truncation) {
  if (!c.is_exact()) throw InexactLocus("series construction needs an exact locus");
  if (w.degree != 1) throw std::invalid_argument("series construction needs a field of degree 1");
  if (truncation < 1) throw std::invalid_argument("truncation must be positive");
  const std::size_t m = v.dimension();
  LaurentSolution sol;
  sol.locus = c.exact;
  sol.weights = w;
  sol.truncation = truncation;
  const ExactMatrix k = kovalevskaya_matrix(v, w, c.exact);

  std::vector<std::vector<Poly>> y(m, std::vector<Poly>(static_cast<std::size_t>(truncation) + 1));
  MonomialSeries engine(&y);
  std::vector<std::size_t> handles;
  for (const auto& f : v.components()) handles.push_back(engine.add(v, f));
  for (std::size_t i = 0; i < m; ++i) y[i][0] = Poly::constant(c.exact[i]);
  engine.compute_order(0);

  for (int j = 1; j <= truncation; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    engine.compute_order(ju);
    std::vector<Poly> rhs;
    for (std::size_t i = 0; i < m; ++i) rhs.push_back(-engine.coefficient(handles[i], ju));
    ExactMatrix shifted = k;
    for (std::size_t i = 0; i < m; ++i) shifted(i, i) -= Rational(j);
    auto solved = solve_singular(shifted, rhs);
    std::vector<Poly> dj = solved.particular;
    if (!solved.kernel.empty()) {
      Resonance res;
      res.order = j;
      res.consistent = solved.consistent;
      ExactMatrix rows(solved.kernel.size(), m);
      for (std::size_t r = 0; r < solved.kernel.size(); ++r)
        for (std::size_t s = 0; s < m; ++s) rows(r, s) = solved.kernel[r][s];
      const Rref red = rref(rows);
      for (std::size_t r = 0; r < red.pivots.size(); ++r) {
        ExactVector row(m);
        for (std::size_t s = 0; s < m; ++s) row[s] = red.reduced(r, s);
        res.kernel.push_back(std::move(row));
        res.anchors.push_back(red.pivots[r]);
      }
      if (solved.consistent) {
        for (std::size_t r = 0; r < res.kernel.size(); ++r) {
          const Poly shift = dj[res.anchors[r]];
          const std::string name = parameter_name(sol.parameters.size() + 1);
          const Poly alpha = Poly::variable(name);
          for (std::size_t s = 0; s < m; ++s) {
            if (res.kernel[r][s].is_zero()) continue;
            dj[s] += res.kernel[r][s] * (alpha - shift);
          }
          sol.parameters.push_back(name);
          sol.parameter_orders.push_back(j);
          sol.parameter_anchors.push_back(res.anchors[r]);
          res.parameters.push_back(name);
        }
      } else {
        sol.obstructions.push_back(j);
      }
      sol.resonances.push_back(std::move(res));
    }
    for (std::size_t i = 0; i < m; ++i) y[i][ju] = std::move(dj[i]);
    engine.compute_order(ju);
  }

  const int kmax = [&] {
    int best = 0;
    const auto roots = roots_exact_first(charpoly(k));
    for (const auto& [r, mult] : roots.rational_roots)
      if (r.is_integer() && r.sign() > 0) best = std::max(best, static_cast<int>(r.numerator().get_si()));
    return best;
  }();
  if (truncation < kmax) {
    sol.warnings.push_back("truncation " + std::to_string(truncation) + " is below the largest resonance " +
                           std::to_string(kmax));
  }
  sol.d.assign(static_cast<std::size_t>(truncation) + 1, std::vector<Poly>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= static_cast<std::size_t>(truncation); ++j) sol.d[j][i] = std::move(y[i][j]);
  return sol;
}

std::string_view to_string(SeriesClass::Kind k) {
  switch (k) {
    case SeriesClass::Kind::Principal: return "principal";
    case SeriesClass::Kind::Lower: return "lower";
    case SeriesClass::Kind::Obstructed: return "obstructed";
  }
  return "lower";
}

SeriesClass classify(const LaurentSolution& sol) {
  SeriesClass out;
  out.parameter_count = sol.parameter_count();
  if (!sol.obstructions.empty()) {
    out.kind = SeriesClass::Kind::Obstructed;
    out.obstructed_at = sol.obstructions.front();
    return out;
  }
  out.kind = out.parameter_count == sol.locus.size() ? SeriesClass::Kind::Principal : SeriesClass::Kind::Lower;
  return out;
}

bool in_semigroup(long j, const std::vector<long>& generators) {
  if (j < 0) return false;
  std::vector<bool> reach(static_cast<std::size_t>(j) + 1, false);
  reach[0] = true;
  for (long t = 1; t <= j; ++t) {
    for (long g : generators) {
      if (g > 0 && g <= t && reach[static_cast<std::size_t>(t - g)]) {
        reach[static_cast<std::size_t>(t)] = true;
        break;
      }
    }
  }
  return reach[static_cast<std::size_t>(j)];
}

std::vector<CoefficientViolation> qh_coefficient_check(const LaurentSolution& sol,
                                                       const std::vector<long>& positive_exponents) {
  std::vector<CoefficientViolation> out;
  std::map<std::string, long> kappa;
  for (std::size_t l = 0; l < sol.parameters.size(); ++l) kappa[sol.parameters[l]] = sol.parameter_orders[l];
  for (std::size_t j = 0; j < sol.d.size(); ++j) {
    for (std::size_t i = 0; i < sol.d[j].size(); ++i) {
      const Poly& p = sol.d[j][i];
      if (j == 0) {
        if (!p.is_constant() || p.constant_term() != sol.locus[i]) {
          out.push_back({i, 0, "leading coefficient differs from the locus"});
        }
        continue;
      }
      if (p.is_zero()) continue;
      if (!in_semigroup(static_cast<long>(j), positive_exponents)) {
        out.push_back({i, static_cast<int>(j), "nonzero coefficient outside the exponent semigroup"});
      }
      for (const auto& [e, c] : p.terms()) {
        long deg = 0;
        bool known = true;
        for (std::size_t k = 0; k < e.size(); ++k) {
          if (e[k] == 0) continue;
          auto it = kappa.find(p.variables()[k]);
          if (it == kappa.end()) {
            known = false;
            break;
          }
          deg += static_cast<long>(e[k]) * it->second;
        }
        if (!known || deg != static_cast<long>(j)) {
          out.push_back({i, static_cast<int>(j), "monomial of weighted degree " + std::to_string(deg)});
          break;
        }
      }
    }
  }
  return out;
}

std::vector<std::optional<int>> residual_orders(const VectorField& v, const LaurentSolution& sol) {
  const std::size_t m = v.dimension();
  const Poly t = Poly::variable("T");
  std::map<std::string, Poly> bind;
  std::vector<Poly> y(m), lhs(m);
  for (std::size_t i = 0; i < m; ++i) {
    Poly tp = Poly::constant(1);
    for (std::size_t j = 0; j < sol.d.size(); ++j) {
      y[i] += sol.d[j][i] * tp;
      lhs[i] += Rational(static_cast<long>(j) - sol.weights.weights[i]) * (sol.d[j][i] * tp);
      tp *= t;
    }
    bind[v.variables()[i]] = y[i];
  }
  std::vector<std::optional<int>> out;
  for (std::size_t i = 0; i < m; ++i) {
    const Poly r = lhs[i] - v[i].substitute(bind);
    const int ti = r.index_of("T");
    std::optional<int> lowest;
    for (const auto& [e, c] : r.terms()) {
      const int deg = ti < 0 ? 0 : static_cast<int>(e[static_cast<std::size_t>(ti)]);
      if (!lowest || deg < *lowest) lowest = deg;
    }
    out.push_back(lowest);
  }
  return out;
}

InitialValue initial_value_map(const LaurentSolution& sol, const std::vector<std::complex<double>>& params,
                               std::complex<double> alpha0, std::complex<double> z) {
  if (params.size() != sol.parameters.size()) throw std::invalid_argument("wrong number of parameter values");
  std::map<std::string, std::complex<double>> values;
  for (std::size_t l = 0; l < params.size(); ++l) values[sol.parameters[l]] = params[l];
  auto eval = [&](const Poly& p) {
    std::vector<std::complex<double>> x(p.variables().size(), 0.0);
    for (std::size_t k = 0; k < x.size(); ++k) {
      auto it = values.find(p.variables()[k]);
      if (it != values.end()) x[k] = it->second;
    }
    return p.evaluate(std::span<const std::complex<double>>(x));
  };
  const std::complex<double> t = z - alpha0;
  const std::size_t m = sol.locus.size();
  InitialValue out;
  out.x.assign(m, 0.0);
  double radius = std::numeric_limits<double>::infinity();
  const std::size_t n = sol.d.size() - 1;
  for (std::size_t i = 0; i < m; ++i) {
    double growth = 0.0;
    for (std::size_t j = 0; j <= n; ++j) {
      const std::complex<double> dij = eval(sol.d[j][i]);
      out.x[i] += dij * std::pow(t, static_cast<double>(static_cast<long>(j) - sol.weights.weights[i]));
      if (j >= std::max<std::size_t>(1, n / 2) && std::abs(dij) > 0.0) {
        growth = std::max(growth, std::pow(std::abs(dij), 1.0 / static_cast<double>(j)));
      }
    }
    if (growth > 0.0) radius = std::min(radius, 1.0 / growth);
  }
  out.heuristic_radius = radius;
  out.outside_heuristic_radius = std::abs(t) > radius;
  return out;
}

}  // namespace kovan
