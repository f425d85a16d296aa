#pragma once

#include <string>
#include <vector>

#include "kovan/matrix.hpp"
#include "kovan/poly.hpp"

namespace kovan {

/// Reduced row echelon form together with the row-operation matrix E such
/// that E * input == reduced.
struct Rref {
  ExactMatrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
  ExactMatrix transform;
};

Rref rref(const ExactMatrix& m);
std::size_t rank(const ExactMatrix& m);

/// Kernel basis in the standard RREF form: one vector per free column, with a
/// 1 in that column and zeros in the other free columns.
std::vector<ExactVector> kernel_basis(const ExactMatrix& m);

Rational determinant(const ExactMatrix& m);
ExactMatrix inverse(const ExactMatrix& m);

/// Monic characteristic polynomial det(lambda*I - M), ascending coefficients,
/// by Faddeev-LeVerrier. Works over any field-like T (Rational, complex).
template <class T>
std::vector<T> charpoly_coefficients(const Matrix<T>& a) {
  if (!a.is_square()) throw std::invalid_argument("charpoly of a non-square matrix");
  const std::size_t n = a.rows();
  std::vector<T> c(n + 1, T(0));
  c[n] = T(1);
  Matrix<T> mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix<T> next = a * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = std::move(next);
    const T tr = (a * mk).trace();
    c[n - k] = -tr / T(static_cast<long>(k));
  }
  return c;
}

/// Characteristic polynomial as a univariate Poly in `var`.
Poly charpoly(const ExactMatrix& m, const std::string& var = "lambda");

/// Outcome of solving M x = b for a possibly singular square M.
///
/// When consistent, `particular` has every free (non-pivot) coordinate pinned
/// to zero. When inconsistent, `particular` is still filled from the pivot rows
/// and `defects` holds the nonzero left-over entries of E*b.
template <class V>
struct SingularSolution {
  bool consistent = true;
  std::vector<V> particular;
  std::vector<ExactVector> kernel;
  std::vector<V> defects;
};

template <class V>
SingularSolution<V> solve_singular(const ExactMatrix& m, const std::vector<V>& b) {
  if (!m.is_square()) throw std::invalid_argument("solve_singular needs a square matrix");
  if (b.size() != m.rows()) throw std::invalid_argument("solve_singular: right-hand side length mismatch");
  const Rref r = rref(m);
  const std::vector<V> eb = r.transform.apply(b);
  SingularSolution<V> out;
  out.particular.assign(m.cols(), V{});
  for (std::size_t row = 0; row < r.pivots.size(); ++row) out.particular[r.pivots[row]] = eb[row];
  for (std::size_t row = r.pivots.size(); row < eb.size(); ++row) {
    if (!eb[row].is_zero()) {
      out.consistent = false;
      out.defects.push_back(eb[row]);
    }
  }
  out.kernel = kernel_basis(m);
  return out;
}

}  // namespace kovan
