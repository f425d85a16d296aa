#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kovan/matrix.hpp"
#include "kovan/poly.hpp"

namespace kovan {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Polynomial system flattened into double-precision monomial lists for fast
/// repeated evaluation. Unknowns are given explicitly; any other variable in
/// the equations is an error.
class CompiledSystem {
 public:
  CompiledSystem(const std::vector<Poly>& equations, const std::vector<std::string>& unknowns);

  std::size_t equations() const { return eqs_.size(); }
  std::size_t unknowns() const { return n_; }

  ComplexVector evaluate(std::span<const Complex> x) const;
  Matrix<Complex> jacobian(std::span<const Complex> x) const;
  /// Componentwise |f_i(x)| / (sum over terms |c| |x^e|), the largest one.
  double scaled_residual(std::span<const Complex> x) const;

 private:
  struct Term {
    Complex coeff;
    std::vector<std::pair<std::size_t, unsigned>> powers;
  };
  using Compiled = std::vector<Term>;

  static Compiled compile(const Poly& p, const std::vector<std::string>& unknowns);
  static Complex eval(const Compiled& c, std::span<const Complex> x, double* magnitude = nullptr);

  std::size_t n_;
  std::vector<Compiled> eqs_;
  std::vector<std::vector<Compiled>> jac_;
};

struct NewtonOptions {
  double tolerance = 1e-12;
  int max_iterations = 200;
};

struct NewtonOutcome {
  bool converged = false;
  ComplexVector x;
  double residual = 0.0;
  int iterations = 0;
};

/// Damped Newton (least squares when the system is not square) from `seed`.
NewtonOutcome newton_solve(const CompiledSystem& system, ComplexVector seed, const NewtonOptions& opts = {});

/// Exact copy of a numeric vector when every entry snaps to a rational with
/// denominator at most max_den and negligible imaginary part.
std::optional<ExactVector> snap_rational(std::span<const Complex> x, long max_den = 1000000, double imag_tol = 1e-9);

}  // namespace kovan
