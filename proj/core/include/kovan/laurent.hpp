#pragma once

#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kovan/field.hpp"
#include "kovan/loci.hpp"

namespace kovan {

/// Taylor coefficients in T of products of truncated series. Each monomial
/// x^e is a node built from a parent node times one y_k, so every coefficient
/// is one convolution.
class MonomialSeries {
 public:
  /// `y[i][j]` is the coefficient of T^j in y_i; it may grow after construction.
  explicit MonomialSeries(const std::vector<std::vector<Poly>>* y) : y_(y) {}

  /// Registers a polynomial over the field's universe; returns its handle.
  std::size_t add(const VectorField& field, const Poly& p);

  /// (Re)computes order j of every node from orders < j and the current y.
  void compute_order(std::size_t j);

  /// [T^j] of registered polynomial `handle`; order j must have been computed.
  Poly coefficient(std::size_t handle, std::size_t j) const;

 private:
  struct Node {
    std::size_t parent;
    std::size_t var;
    std::vector<Poly> coeffs;
  };
  std::size_t node_for(const Exponents& declared);

  const std::vector<std::vector<Poly>>* y_;
  std::map<Exponents, std::size_t> index_;
  std::vector<Node> nodes_;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> polys_;
};

struct Resonance {
  int order = 0;
  std::vector<ExactVector> kernel;  // rows in reduced echelon form
  std::vector<std::size_t> anchors; // pivot component of each kernel row
  std::vector<std::string> parameters;
  bool consistent = true;
};

/// Truncated Laurent solution x_i = T^(-a_i) sum_j d_{i,j} T^j, T = z - alpha0.
/// Coefficients are polynomials in the free parameters alpha1, alpha2, ...
struct LaurentSolution {
  ExactVector locus;
  Weights weights;
  int truncation = 0;
  std::vector<std::vector<Poly>> d;  // d[j][i]
  std::vector<Resonance> resonances;
  std::vector<std::string> parameters;
  std::vector<int> parameter_orders;
  std::vector<std::size_t> parameter_anchors;
  std::vector<int> obstructions;
  std::vector<std::string> warnings;

  const Poly& coeff(std::size_t i, std::size_t j) const { return d.at(j).at(i); }
  /// Symbolic parameters plus alpha0.
  std::size_t parameter_count() const { return parameters.size() + 1; }
  /// Orders after the first obstruction are not authoritative.
  bool authoritative(int j) const { return obstructions.empty() || j < obstructions.front(); }
};

std::string parameter_name(std::size_t l);

/// Default truncation: 2 * largest positive integer exponent, plus gamma when
/// a commuting field of degree gamma will be expanded.
int default_truncation(const KExponentReport& k, std::optional<int> gamma = std::nullopt);

LaurentSolution build_series(const VectorField& v, const Weights& w, const IndicialLocus& c, int truncation);

struct SeriesClass {
  enum class Kind { Principal, Lower, Obstructed } kind = Kind::Lower;
  std::size_t parameter_count = 0;
  std::optional<int> obstructed_at;
};

std::string_view to_string(SeriesClass::Kind k);

SeriesClass classify(const LaurentSolution& sol);

struct CoefficientViolation {
  std::size_t component;
  int order;
  std::string reason;
};

/// Every monomial alpha^n of d_{i,j} has sum n_l kappa_l = j, every nonzero
/// d_{i,j} sits at an order in the semigroup generated by the positive
/// exponents, and d_{i,0} = c_i.
std::vector<CoefficientViolation> qh_coefficient_check(const LaurentSolution& sol,
                                                       const std::vector<long>& positive_exponents);

/// Semigroup membership: j = sum n_l g_l with n_l >= 0.
bool in_semigroup(long j, const std::vector<long>& generators);

/// Lowest order j (relative to T^(-a_i)) at which each component of
/// dx/dz - F(x) is nonzero for the truncated series; computed by direct
/// substitution, independently of the recursion. nullopt means identically zero.
std::vector<std::optional<int>> residual_orders(const VectorField& v, const LaurentSolution& sol);

struct InitialValue {
  std::vector<std::complex<double>> x;
  double heuristic_radius = 0.0;
  bool outside_heuristic_radius = false;
};

/// Partial sums of the truncated series at z, with parameter values for
/// alpha1.. and the pole position alpha0.
InitialValue initial_value_map(const LaurentSolution& sol, const std::vector<std::complex<double>>& params,
                               std::complex<double> alpha0, std::complex<double> z);

}  // namespace kovan
