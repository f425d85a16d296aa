#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kovan/poly.hpp"
#include "kovan/rational.hpp"

namespace kovan {

struct NumericOptions {
  double tolerance = 1e-12;  // scaled residual |p(r)| / sum |a_k| |r|^k
  int max_iterations = 200;
};

class NumericNonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NumericRoot {
  std::complex<double> value;
  int multiplicity = 1;
  double error_bound = 0.0;
};

struct RootSet {
  std::vector<std::pair<Rational, int>> rational_roots;
  Poly residual_factor;  // univariate, no rational roots
  std::vector<NumericRoot> numeric_roots;

  int degree() const;
  bool all_rational() const { return numeric_roots.empty() && residual_factor.is_constant(); }
  /// Every root repeated by multiplicity, rational ones converted to double.
  std::vector<std::complex<double>> values() const;
};

/// Dense univariate helpers, ascending coefficients.
using DenseUPoly = std::vector<Rational>;
DenseUPoly to_dense(const Poly& p);
Poly from_dense(const DenseUPoly& c, const std::string& var);

/// All rational roots exactly, then the remaining factor numerically.
/// Throws NumericNonConvergence if the numeric stage misses its tolerance.
RootSet roots_exact_first(const Poly& p, const NumericOptions& opts = {});

/// Roots of a complex polynomial (ascending coefficients) by Aberth-Ehrlich
/// iteration; nearby roots are clustered into one entry with a multiplicity.
std::vector<NumericRoot> polynomial_roots(std::span<const std::complex<double>> ascending,
                                          const NumericOptions& opts = {});

/// Scaled residual used as the acceptance test for numeric roots.
double scaled_residual(std::span<const std::complex<double>> ascending, std::complex<double> z);

}  // namespace kovan
