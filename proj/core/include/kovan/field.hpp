#pragma once

#include <complex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kovan/matrix.hpp"
#include "kovan/poly.hpp"

namespace kovan {

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnpairedVariable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Polynomial vector field dx_i/dz = f_i(x). Components live over the sorted
/// union of the declared variables; the declared order fixes the meaning of
/// index i.
class VectorField {
 public:
  VectorField() = default;
  VectorField(std::vector<std::string> variables, std::vector<Poly> components);

  std::size_t dimension() const { return vars_.size(); }
  const std::vector<std::string>& variables() const { return vars_; }
  const std::vector<Poly>& components() const { return comps_; }
  const Poly& operator[](std::size_t i) const { return comps_[i]; }

  /// Position of declared variable i inside the sorted universe.
  std::size_t slot(std::size_t i) const { return slot_[i]; }
  const std::vector<std::string>& universe() const { return universe_; }

  bool is_zero() const;

  /// Values in declared order.
  ExactVector evaluate(std::span<const Rational> x) const;
  std::vector<std::complex<double>> evaluate(std::span<const std::complex<double>> x) const;

  /// J(i, j) = d f_i / d x_j, both in declared order.
  std::vector<std::vector<Poly>> jacobian() const;
  ExactMatrix jacobian_at(std::span<const Rational> x) const;

  /// Reorders a declared-order vector into universe order.
  template <class T>
  std::vector<T> to_universe(std::span<const T> x) const {
    if (x.size() != vars_.size()) throw DimensionMismatch("point has wrong dimension");
    std::vector<T> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[slot_[i]] = x[i];
    return out;
  }

  friend VectorField operator+(const VectorField& a, const VectorField& b);
  friend VectorField operator*(const Rational& s, const VectorField& v);
  friend bool operator==(const VectorField& a, const VectorField& b);

 private:
  std::vector<std::string> vars_;
  std::vector<std::string> universe_;
  std::vector<std::size_t> slot_;
  std::vector<Poly> comps_;
};

/// Interleaved Hamiltonian field (dH/dp_1, -dH/dq_1, dH/dp_2, ...) for the
/// declared order (q_1, p_1, q_2, p_2, ...).
VectorField hamiltonian_to_field(const Poly& hamiltonian, const std::vector<std::string>& variables);

/// Weight tuple a_1..a_m together with the scaling degree. For F the degree is
/// 1; for a commuting field it is gamma.
struct Weights {
  std::vector<int> weights;
  int degree = 1;

  bool is_primitive() const;
  friend bool operator==(const Weights&, const Weights&) = default;
};

struct WeightViolation {
  std::size_t component;
  Exponents monomial;  // universe order
  long weighted_degree;
  long expected;
};

struct WeightCheck {
  bool ok = true;
  std::vector<WeightViolation> violations;
};

WeightCheck verify_weight(const VectorField& v, const Weights& w);

struct WeightInference {
  std::vector<Weights> certificates;  // lexicographic in the weight tuple
  bool degenerate = false;            // zero field: every tuple passes
  int max_weight = 12;

  /// First certificate whose entries have gcd 1, if any.
  std::optional<Weights> first_primitive() const;
};

WeightInference infer_weights(const VectorField& v, int degree, int max_weight = 12);

/// The unique degree making `v` quasi-homogeneous for the given weights, if it
/// exists and is positive.
std::optional<int> infer_degree(const VectorField& v, const std::vector<int>& weights);

/// Weighted degree of a single polynomial, if it is quasi-homogeneous.
std::optional<long> weighted_degree(const Poly& p, const std::vector<std::string>& variables,
                                    const std::vector<int>& weights);

/// [F, G]_i = sum_j (f_j dg_i/dx_j - g_j df_i/dx_j).
VectorField lie_bracket(const VectorField& f, const VectorField& g);

struct IdentityCheck {
  bool ok = true;
  std::vector<std::size_t> failing_components;
};

/// sum_j a_j x_j df_i/dx_j == (a_i + degree) f_i for every i.
IdentityCheck euler_identity_check(const VectorField& v, const Weights& w);

/// df_i/dx_j(lambda^a x) == lambda^(a_i + degree - a_j) df_i/dx_j(x), as polynomials.
IdentityCheck scaling_identity_check(const VectorField& v, const Weights& w, const Rational& lambda);

/// Zero-locus condition: F(x) = 0 only at x = 0.
struct A3Result {
  enum class Status { Ok, Counterexample, Undecided };
  Status status = Status::Undecided;
  std::optional<ExactVector> exact_witness;
  std::optional<std::vector<std::complex<double>>> numeric_witness;
  std::string detail;
};

std::string_view to_string(A3Result::Status s);

struct A3Options {
  int seeds_per_branch = 16;
  unsigned long long rng_seed = 20240521ULL;
  double tolerance = 1e-12;
  int max_iterations = 200;
};

A3Result check_A3(const VectorField& f, const Weights& w, const A3Options& opts = {});

}  // namespace kovan
