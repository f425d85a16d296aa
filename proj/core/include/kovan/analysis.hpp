#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kovan/field.hpp"
#include "kovan/flow.hpp"
#include "kovan/laurent.hpp"
#include "kovan/loci.hpp"
#include "kovan/parse.hpp"

namespace kovan {

/// Input problems the pipeline cannot start on (no weight, bad seeds, ...).
class AnalysisInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Stage { Check, Loci, Series, Flow, Analyze };
std::string_view to_string(Stage s);

/// Command-line overrides; unset fields fall back to the problem file.
struct AnalysisOptions {
  std::optional<int> truncation;
  std::optional<unsigned long long> rng_seed;
  std::optional<double> tolerance;
  std::optional<int> max_weight;
};

/// Settings actually used, after merging flags, file and defaults.
struct EffectiveOptions {
  std::optional<int> truncation;  // unset: per-locus default
  unsigned long long rng_seed = 20240521ULL;
  double tolerance = 1e-12;
  int newton_iterations = 200;
  int max_weight = 12;
};

struct LocusAnalysis {
  IndicialLocus locus;
  KExponentReport exponents;
  std::optional<LaurentSolution> series;
  std::optional<SeriesClass> series_class;
  std::vector<std::optional<int>> residual_orders;
  bool residual_ok = true;
  std::vector<CoefficientViolation> coefficient_violations;
  std::optional<PairingReport> pairing;
  std::string series_note;
};

struct GLocus {
  IndicialLocus locus;
  std::optional<std::vector<Rational>> exponents;
  ComplexVector numeric_exponents;
};

struct DeformedSummary {
  Rational epsilon;
  std::optional<std::vector<Rational>> matched_exponents;
  std::optional<ExactVector> matched_locus;
  std::size_t loci = 0;
};

struct GAnalysis {
  std::optional<int> gamma;
  bool commutes = false;
  std::optional<A3Result> a3;
  std::optional<std::size_t> principal_index;
  std::optional<GExpansion> expansion;
  std::optional<KernelIdentityReport> kernel;
  std::optional<ParamFlow> flow;
  std::vector<SupportViolation> support_violations;
  std::optional<NondegeneracyReport> nondegeneracy;
  std::optional<DegenerationReport> degeneration;
  std::vector<GLocus> g_loci;
  std::vector<DeformedSummary> deformed;
  std::string note;
};

struct AnalysisReport {
  Stage stage = Stage::Analyze;
  std::string name;
  std::vector<std::string> variables;
  std::vector<std::pair<std::string, std::string>> sources;
  EffectiveOptions options;
  VectorField f;
  std::optional<VectorField> g;

  Weights weights;
  bool weights_declared = false;
  std::vector<Weights> certificates;
  std::optional<long> degree_hf;
  std::optional<long> degree_hg;
  IdentityCheck euler;
  A3Result a3;

  std::vector<std::string> locus_strategies;
  std::vector<LocusAnalysis> loci;
  std::optional<GAnalysis> g_side;

  std::vector<std::string> warnings;
  /// Obstructions and failed identities; a non-empty list means exit status 2.
  std::vector<std::string> violations;
};

/// Runs the pipeline up to `stage`. Throws AnalysisInputError (and the parser's
/// ParseError) for problems that cannot be analyzed at all.
AnalysisReport analyze(const ProblemSpec& problem, Stage stage, const AnalysisOptions& opts = {});

/// Epsilon values used by the deformed-field check.
std::vector<Rational> default_epsilons();

}  // namespace kovan
