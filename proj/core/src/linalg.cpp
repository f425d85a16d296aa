#include "kovan/linalg.hpp"

namespace kovan {

Rref rref(const ExactMatrix& m) {
  Rref out{m, {}, ExactMatrix::identity(m.rows())};
  ExactMatrix& a = out.reduced;
  ExactMatrix& e = out.transform;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = row;
    while (piv < a.rows() && a(piv, col).is_zero()) ++piv;
    if (piv == a.rows()) continue;
    a.swap_rows(row, piv);
    e.swap_rows(row, piv);
    const Rational inv = Rational(1) / a(row, col);
    for (std::size_t c = 0; c < a.cols(); ++c) a(row, c) *= inv;
    for (std::size_t c = 0; c < e.cols(); ++c) e(row, c) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col).is_zero()) continue;
      const Rational f = a(r, col);
      for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) -= f * a(row, c);
      for (std::size_t c = 0; c < e.cols(); ++c) e(r, c) -= f * e(row, c);
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

std::size_t rank(const ExactMatrix& m) { return rref(m).pivots.size(); }

std::vector<ExactVector> kernel_basis(const ExactMatrix& m) {
  const Rref r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<ExactVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    ExactVector v(m.cols(), Rational(0));
    v[f] = 1;
    for (std::size_t row = 0; row < r.pivots.size(); ++row) v[r.pivots[row]] = -r.reduced(row, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

Rational determinant(const ExactMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
  ExactMatrix a = m;
  Rational det(1);
  const std::size_t n = a.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col).is_zero()) ++piv;
    if (piv == n) return Rational(0);
    if (piv != col) {
      a.swap_rows(piv, col);
      det = -det;
    }
    det *= a(col, col);
    const Rational inv = Rational(1) / a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a(r, col).is_zero()) continue;
      const Rational f = a(r, col) * inv;
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return det;
}

ExactMatrix inverse(const ExactMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("inverse of a non-square matrix");
  const Rref r = rref(m);
  if (r.pivots.size() != m.rows()) throw std::domain_error("inverse of a singular matrix");
  return r.transform;
}

Poly charpoly(const ExactMatrix& m, const std::string& var) {
  const auto c = charpoly_coefficients(m);
  Poly out(std::vector<std::string>{var});
  for (std::size_t k = 0; k < c.size(); ++k) {
    out += Poly::monomial({var}, {static_cast<std::uint32_t>(k)}, c[k]);
  }
  return out;
}

}  // namespace kovan
