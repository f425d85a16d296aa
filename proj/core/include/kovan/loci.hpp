#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kovan/field.hpp"
#include "kovan/newton.hpp"
#include "kovan/parse.hpp"
#include "kovan/roots.hpp"

namespace kovan {

enum class Exactness { Exact, Numeric };
enum class LocusSource { UserSeed, Newton, StructuredSearch };

std::string_view to_string(Exactness e);
std::string_view to_string(LocusSource s);

/// Nonzero root c of -(a_i/degree) c_i = f_i(c). For degree 1 this is the
/// usual indicial equation; for a field of degree gamma it is the Puiseux form.
struct IndicialLocus {
  Exactness exactness = Exactness::Numeric;
  LocusSource source = LocusSource::Newton;
  ExactVector exact;      // filled when exact
  ComplexVector numeric;  // always filled
  double residual = 0.0;

  bool is_exact() const { return exactness == Exactness::Exact; }
};

class NoLocusFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InexactLocus : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct LocusSearchOptions {
  double tolerance = 1e-12;
  int max_iterations = 200;
  int seeds_per_pattern = 64;
  unsigned long long rng_seed = 20240521ULL;
  double dedup_tolerance = 1e-8;
  long max_denominator = 1000000;
  /// Throw NoLocusFound when every strategy comes back empty.
  bool throw_if_empty = false;
};

struct LocusSearchReport {
  std::vector<IndicialLocus> loci;
  std::vector<std::string> strategies;  // which strategies ran, in order
  /// Support patterns the exact search could not settle and handed to Newton.
  std::size_t numeric_patterns = 0;
};

/// Nonzero roots of a polynomial system, collected support pattern by support
/// pattern: exact elimination first, seeded Newton on the patterns it cannot
/// settle. Numeric roots are returned as found (not snapped).
struct SystemRoots {
  std::vector<ExactVector> exact;
  std::vector<ComplexVector> numeric;
  std::size_t numeric_patterns = 0;
};

SystemRoots solve_polynomial_system(const std::vector<Poly>& equations, const std::vector<std::string>& unknowns,
                                    const LocusSearchOptions& opts = {});

/// The polynomial system degree*f_i(x) + a_i*x_i whose nonzero roots are loci.
std::vector<Poly> indicial_equations(const VectorField& v, const Weights& w);

/// Exact test of the indicial equations at a rational point.
bool is_indicial_locus(const VectorField& v, const Weights& w, const ExactVector& c);

LocusSearchReport find_loci(const VectorField& v, const Weights& w,
                            const std::vector<std::vector<SeedValue>>& seeds = {},
                            const LocusSearchOptions& opts = {});

/// J(c) + diag(a_i / degree).
ExactMatrix kovalevskaya_matrix(const VectorField& v, const Weights& w, const ExactVector& c);
Matrix<Complex> kovalevskaya_matrix(const VectorField& v, const Weights& w, const ComplexVector& c);

enum class LocusClass { Principal, Lower, NonPainleve };
std::string_view to_string(LocusClass c);

struct KExponentReport {
  bool exact = true;
  ExactMatrix matrix;             // exact loci
  Matrix<Complex> numeric_matrix;
  Poly charpoly;                  // exact loci
  RootSet exponents;              // exact loci
  ComplexVector numeric_exponents;  // every locus, with multiplicity, sorted
  ExactVector minus_one_eigenvector;  // (a_1 c_1, ..., a_m c_m), exact loci
  bool minus_one_verified = false;
  bool has_zero_exponent = false;
  std::optional<bool> semisimple_at_resonances;
  LocusClass classification = LocusClass::NonPainleve;

  /// Exponents with multiplicity in ascending order, when all are rational.
  std::optional<std::vector<Rational>> rational_exponents() const;
  /// Positive integer exponents with multiplicity, ascending.
  std::vector<long> resonances() const;
};

KExponentReport k_exponents(const VectorField& v, const Weights& w, const IndicialLocus& c,
                            const NumericOptions& opts = {});

/// Exponent multiset of an exact matrix, ascending; nullopt if not all rational.
std::optional<std::vector<Rational>> rational_spectrum(const ExactMatrix& m);

class SingularJacobian : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Pulls F back along x = phi(y). The new field is adj(Dphi) F(phi) / det(Dphi),
/// kept as a numerator vector and a scalar denominator.
struct TransformReport {
  std::vector<Poly> numerator;
  Poly denominator;
  std::optional<VectorField> polynomial_field;  // when det(Dphi) is a nonzero constant
  bool phi_quasi_homogeneous = false;
  bool field_quasi_homogeneous = false;         // only meaningful for polynomial_field
  ExactVector image_locus;                      // phi(new_locus)
  bool new_locus_verified = false;              // -a_i y_i = F~_i(y) at new_locus
  ExactMatrix original_matrix;
  ExactMatrix transformed_matrix;
  bool exponents_equal = false;                 // equal characteristic polynomials
};

/// `phi` gives the old coordinates as polynomials in `new_variables`;
/// `new_locus` is the point y with phi(y) a locus of v.
TransformReport transform_check(const VectorField& v, const Weights& w, const std::vector<Poly>& phi,
                                const std::vector<std::string>& new_variables, const ExactVector& new_locus);

}  // namespace kovan
