#include "kovan/newton.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace kovan {

CompiledSystem::Compiled CompiledSystem::compile(const Poly& p, const std::vector<std::string>& unknowns) {
  std::vector<std::size_t> map(p.variables().size());
  for (std::size_t v = 0; v < p.variables().size(); ++v) {
    auto it = std::find(unknowns.begin(), unknowns.end(), p.variables()[v]);
    map[v] = it == unknowns.end() ? unknowns.size() : static_cast<std::size_t>(it - unknowns.begin());
  }
  Compiled out;
  for (const auto& [e, c] : p.terms()) {
    Term t{Complex(c.to_double(), 0.0), {}};
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      if (map[v] == unknowns.size()) {
        throw std::invalid_argument("equation uses '" + p.variables()[v] + "' which is not an unknown");
      }
      t.powers.emplace_back(map[v], e[v]);
    }
    out.push_back(std::move(t));
  }
  return out;
}

CompiledSystem::CompiledSystem(const std::vector<Poly>& equations, const std::vector<std::string>& unknowns)
    : n_(unknowns.size()) {
  for (const auto& eq : equations) {
    eqs_.push_back(compile(eq, unknowns));
    std::vector<Compiled> row;
    for (const auto& u : unknowns) row.push_back(compile(eq.derivative(u), unknowns));
    jac_.push_back(std::move(row));
  }
}

Complex CompiledSystem::eval(const Compiled& c, std::span<const Complex> x, double* magnitude) {
  Complex acc = 0.0;
  double mag = 0.0;
  for (const auto& t : c) {
    Complex m = t.coeff;
    for (const auto& [idx, k] : t.powers) {
      Complex b = x[idx];
      for (unsigned r = 0; r < k; ++r) m *= b;
    }
    acc += m;
    mag += std::abs(m);
  }
  if (magnitude) *magnitude = mag;
  return acc;
}

ComplexVector CompiledSystem::evaluate(std::span<const Complex> x) const {
  ComplexVector out(eqs_.size());
  for (std::size_t i = 0; i < eqs_.size(); ++i) out[i] = eval(eqs_[i], x);
  return out;
}

Matrix<Complex> CompiledSystem::jacobian(std::span<const Complex> x) const {
  Matrix<Complex> out(eqs_.size(), n_);
  for (std::size_t i = 0; i < eqs_.size(); ++i)
    for (std::size_t j = 0; j < n_; ++j) out(i, j) = eval(jac_[i][j], x);
  return out;
}

double CompiledSystem::scaled_residual(std::span<const Complex> x) const {
  double worst = 0.0;
  for (const auto& eq : eqs_) {
    double mag = 0.0;
    const double v = std::abs(eval(eq, x, &mag));
    if (v == 0.0) continue;
    worst = std::max(worst, v / std::max(mag, 1e-300));
  }
  return worst;
}

namespace {

double norm2(const ComplexVector& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

bool finite(const ComplexVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

}  // namespace

NewtonOutcome newton_solve(const CompiledSystem& system, ComplexVector seed, const NewtonOptions& opts) {
  NewtonOutcome out;
  const std::size_t n = system.unknowns();
  const std::size_t m = system.equations();
  if (seed.size() != n) throw std::invalid_argument("newton seed has wrong dimension");
  out.x = std::move(seed);
  if (n == 0) {
    out.residual = system.scaled_residual(out.x);
    out.converged = out.residual <= opts.tolerance;
    return out;
  }
  ComplexVector fx = system.evaluate(out.x);
  double fnorm = norm2(fx);
  for (int it = 0; it < opts.max_iterations; ++it) {
    out.iterations = it + 1;
    out.residual = system.scaled_residual(out.x);
    if (out.residual <= opts.tolerance * 1e-3 || fnorm == 0.0) break;
    const Matrix<Complex> j = system.jacobian(out.x);
    Eigen::MatrixXcd J(m, n);
    Eigen::VectorXcd F(m);
    for (std::size_t r = 0; r < m; ++r) {
      F(r) = fx[r];
      for (std::size_t c = 0; c < n; ++c) J(r, c) = j(r, c);
    }
    Eigen::VectorXcd step = J.completeOrthogonalDecomposition().solve(F);
    if (!step.allFinite()) break;
    double t = 1.0;
    bool accepted = false;
    ComplexVector trial(n);
    for (int ls = 0; ls < 30; ++ls) {
      for (std::size_t c = 0; c < n; ++c) trial[c] = out.x[c] - t * step(c);
      ComplexVector ft = system.evaluate(trial);
      const double tn = norm2(ft);
      if (finite(ft) && tn < fnorm) {
        out.x = trial;
        fx = std::move(ft);
        fnorm = tn;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
    double xs = 0.0;
    for (const auto& z : out.x) xs = std::max(xs, std::abs(z));
    if (t * step.cwiseAbs().maxCoeff() <= 1e-15 * (1.0 + xs)) {
      out.residual = system.scaled_residual(out.x);
      break;
    }
  }
  out.residual = system.scaled_residual(out.x);
  out.converged = finite(out.x) && out.residual <= opts.tolerance;
  return out;
}

std::optional<ExactVector> snap_rational(std::span<const Complex> x, long max_den, double imag_tol) {
  ExactVector out;
  out.reserve(x.size());
  for (const auto& z : x) {
    const double scale = std::max(1.0, std::abs(z));
    if (std::abs(z.imag()) > imag_tol * scale) return std::nullopt;
    if (!std::isfinite(z.real()) || std::abs(z.real()) > 1e15) return std::nullopt;
    out.push_back(rational_approximation(z.real(), max_den));
  }
  return out;
}

}  // namespace kovan
