#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kovan/field.hpp"
#include "kovan/laurent.hpp"
#include "kovan/loci.hpp"

namespace kovan {

class TruncationTooShort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InconsistentG0 : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class G0IdenticallyZero : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// g_i(y) = sum_k g_{i,k} T^k along the Laurent solution, where
/// g_i(x) = T^(-a_i - gamma) g_i(y).
struct GExpansion {
  int gamma = 1;
  std::vector<std::vector<Poly>> g;  // g[k][i]

  const Poly& coeff(std::size_t i, std::size_t k) const { return g.at(k).at(i); }
};

GExpansion g_expansion(const VectorField& g, int gamma, const LaurentSolution& sol, int order);

struct KernelIdentityReport {
  bool ok = true;
  std::vector<int> failing_orders;       // k < gamma with (K + gamma - k) G_k != 0
  bool locus_identity_ok = true;         // (K + gamma) G(c) = 0
  bool leading_zero_ok = true;           // G_0 = ... = G_{gamma-2} = 0
  bool proportional_ok = true;           // G_{gamma-1} = h (a_1 c_1, ..., a_m c_m)
  std::optional<Poly> h;
};

KernelIdentityReport kernel_identity_check(const VectorField& f, const Weights& w, const VectorField& g,
                                           const LaurentSolution& sol, const GExpansion& ex);

/// Induced flow of the free parameters: alpha0' = g0, alpha_l' = g[l-1].
struct ParamFlow {
  int gamma = 1;
  std::vector<std::string> variables;  // alpha1 .. alpha_{m-1}
  std::vector<int> kappa;              // resonance order of each parameter
  Poly g0;
  std::vector<Poly> g;

  /// (alpha1', ..., alpha_{m-1}') as a field of degree gamma in weights kappa.
  VectorField subsystem() const;
  Weights subsystem_weights() const { return {kappa, gamma}; }
  /// (alpha0', alpha1', ...) with alpha0 of weight -1.
  VectorField full_system() const;
  Weights full_weights() const;
};

ParamFlow param_flow(const VectorField& f, const Weights& w, const VectorField& g, const LaurentSolution& sol);

struct SupportViolation {
  std::size_t index;  // 0 for g0, l for g_l
  long weighted_degree;
  long expected;
};

/// Monomial support law: g0 has weighted degree gamma - 1 and g_l has
/// kappa_l + gamma, in the weights kappa.
std::vector<SupportViolation> flow_support_check(const ParamFlow& flow);

enum class Nondegeneracy { NonzeroCertified, PossiblyZero };
std::string_view to_string(Nondegeneracy p);

struct NondegeneracyReport {
  Nondegeneracy result = Nondegeneracy::PossiblyZero;
  bool g0_identically_zero = false;
  bool consistent = true;  // a certificate never coexists with g0 == 0
};

NondegeneracyReport nondegeneracy_check(const VectorField& g, const LaurentSolution& sol, const ParamFlow& flow);

/// A locus of F with its exponent multiset, as input for matching predictions.
struct LowerLocusRef {
  std::size_t index;
  std::vector<Rational> exponents;
};

struct FlowLocusReport {
  /// gamma = 1: locus of the subsystem. gamma >= 2: locus xi~ of the rational
  /// system alpha_i' = g_i / g0 obtained by the rescaling xi~_i = xi0^kappa_i xi_i.
  IndicialLocus reduced_locus;
  /// Loci xi = (xi0, xi1, ...) of the full flow; for gamma >= 2 one per gamma-th root.
  std::vector<ComplexVector> flow_loci;
  std::optional<ExactVector> exact_flow_locus;     // gamma = 1
  std::optional<Rational> xi0_power;               // xi0^gamma = gamma g0(xi~), gamma >= 2
  std::optional<std::vector<Rational>> rho;        // full-flow K-exponents
  ComplexVector numeric_rho;
  std::optional<std::vector<Rational>> reduced_exponents;
  bool minus_one_ok = false;
  std::optional<bool> rescaled_spectrum_ok;        // gamma >= 2: spectrum of the rational system
  std::optional<bool> conjugacy_ok;                // gamma >= 2: numeric P, Q similarity
  double conjugacy_error = 0.0;
  std::optional<std::vector<Rational>> prediction;
  std::vector<std::size_t> matched_loci;
  std::optional<bool> matches_g_locus;             // flow exponents equal G's K-exponents at some locus
};

struct DegenerationReport {
  int gamma = 1;
  std::vector<FlowLocusReport> loci;
  std::vector<std::string> warnings;
  std::vector<std::string> strategies;
};

DegenerationReport degenerate_gamma1(const ParamFlow& flow, const std::vector<LowerLocusRef>& lower,
                                     const LocusSearchOptions& opts = {});
DegenerationReport degenerate_gamma_ge2(const ParamFlow& flow, const std::vector<LowerLocusRef>& lower,
                                        const LocusSearchOptions& opts = {});
DegenerationReport degenerate(const ParamFlow& flow, const std::vector<LowerLocusRef>& lower,
                              const LocusSearchOptions& opts = {});

/// Marks each flow locus whose exponent multiset equals the K-exponents of G
/// at one of the given Puiseux loci.
void match_g_exponents(DegenerationReport& report, const std::vector<std::vector<Rational>>& g_exponents);

struct DeformedFieldReport {
  Rational epsilon;
  Rational k1;
  VectorField field;
  std::vector<IndicialLocus> loci;
  std::vector<std::optional<std::vector<Rational>>> exponents;
  std::optional<std::size_t> match;  // locus realizing the prediction
};

/// F + G / (epsilon + k1), its loci and exponents, and the first locus whose
/// exponents equal `prediction`.
DeformedFieldReport deformed_field_check(const VectorField& f, const Weights& w, const VectorField& g,
                                         const Rational& epsilon, const Rational& k1,
                                         const std::vector<Rational>& prediction,
                                         const LocusSearchOptions& opts = {});

struct PairingReport {
  bool ok = false;
  bool closed = false;          // kappa -> deg(H) - 1 - kappa maps the multiset to itself
  bool weight_pairs_ok = false; // deg q_i + deg p_i = deg(H) - 1 for every pair
};

PairingReport hamiltonian_pairing_check(const std::vector<Rational>& exponents, long hamiltonian_degree,
                                        const Weights& w);

}  // namespace kovan
