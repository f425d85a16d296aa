#include "kovan/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace kovan {

namespace {

using cd = std::complex<double>;

void trim(DenseUPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Rational horner(const DenseUPoly& p, const Rational& x) {
  Rational acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// Divides by (x - r); caller guarantees r is a root.
DenseUPoly deflate(const DenseUPoly& p, const Rational& r) {
  const std::size_t n = p.size() - 1;
  DenseUPoly q(n);
  Rational carry(0);
  for (std::size_t k = n; k-- > 0;) {
    carry = p[k + 1] + carry * r;
    q[k] = carry;
  }
  return q;
}

DenseUPoly derivative(const DenseUPoly& p) {
  DenseUPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * Rational(static_cast<long>(k)));
  trim(d);
  return d;
}

/// Quotient and remainder of a by b (b nonzero).
std::pair<DenseUPoly, DenseUPoly> divmod(DenseUPoly a, const DenseUPoly& b) {
  trim(a);
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  if (a.size() < b.size()) return {{}, a};
  DenseUPoly q(a.size() - b.size() + 1);
  const Rational lead = b.back();
  for (std::size_t k = q.size(); k-- > 0;) {
    const Rational f = a[k + b.size() - 1] / lead;
    q[k] = f;
    if (f.is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= f * b[j];
  }
  a.resize(b.size() - 1);
  trim(a);
  trim(q);
  return {q, a};
}

DenseUPoly monic(DenseUPoly p) {
  trim(p);
  if (p.empty()) return p;
  const Rational lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

DenseUPoly gcd(DenseUPoly a, DenseUPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

/// Yun's algorithm: returns factors f_1, f_2, ... with p ~ prod f_i^i.
std::vector<DenseUPoly> squarefree_decomposition(const DenseUPoly& p) {
  std::vector<DenseUPoly> out;
  DenseUPoly a = monic(p);
  if (a.size() <= 1) return out;
  DenseUPoly b = derivative(a);
  DenseUPoly c = gcd(a, b);
  DenseUPoly w = divmod(a, c).first;
  DenseUPoly y = divmod(b, c).first;
  DenseUPoly z = y;
  {
    auto dw = derivative(w);
    z.resize(std::max(z.size(), dw.size()));
    for (std::size_t k = 0; k < dw.size(); ++k) z[k] -= dw[k];
    trim(z);
  }
  while (w.size() > 1) {
    DenseUPoly g = gcd(w, z);
    out.push_back(g);
    w = divmod(w, g).first;
    y = divmod(z, g).first;
    auto dw = derivative(w);
    z = y;
    z.resize(std::max(z.size(), dw.size()));
    for (std::size_t k = 0; k < dw.size(); ++k) z[k] -= dw[k];
    trim(z);
  }
  return out;
}

std::vector<mpz_class> divisors(mpz_class n) {
  n = abs(n);
  std::vector<std::pair<mpz_class, unsigned>> factors;
  for (mpz_class d = 2; d * d <= n; ++d) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e > 0) factors.emplace_back(d, e);
  }
  if (n > 1) factors.emplace_back(n, 1);
  std::vector<mpz_class> out{1};
  for (const auto& [prime, e] : factors) {
    const std::size_t base = out.size();
    mpz_class pw = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pw *= prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pw);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Integer coefficients with the same roots.
std::vector<mpz_class> integer_scaled(const DenseUPoly& p) {
  mpz_class l = 1;
  for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.denominator().get_mpz_t());
  std::vector<mpz_class> out;
  out.reserve(p.size());
  for (const auto& c : p) out.push_back(c.numerator() * (l / c.denominator()));
  return out;
}

std::vector<cd> to_complex(const DenseUPoly& p) {
  std::vector<cd> out;
  out.reserve(p.size());
  for (const auto& c : p) out.emplace_back(c.to_double(), 0.0);
  return out;
}

cd eval(std::span<const cd> p, cd z, cd* derivative_out = nullptr) {
  cd v(0.0), d(0.0);
  for (std::size_t k = p.size(); k-- > 0;) {
    d = d * z + v;
    v = v * z + p[k];
  }
  if (derivative_out != nullptr) *derivative_out = d;
  return v;
}

/// Raw Aberth-Ehrlich iterates; ascending coefficients, leading one nonzero.
std::vector<cd> aberth(std::span<const cd> p, const NumericOptions& opts) {
  const std::size_t n = p.size() - 1;
  std::vector<cd> z(n);
  if (n == 0) return z;
  // Initial radius from the Fujiwara-type bound.
  double radius = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    radius = std::max(radius, std::pow(std::abs(p[k] / p[n]), 1.0 / static_cast<double>(n - k)));
  }
  radius = std::max(radius, 1e-3);
  for (std::size_t k = 0; k < n; ++k) {
    const double theta = 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.25) / static_cast<double>(n) + 0.4;
    z[k] = std::polar(radius, theta);
  }
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    double biggest = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      cd dp;
      const cd v = eval(p, z[k], &dp);
      if (v == cd(0.0)) continue;
      if (dp == cd(0.0)) {
        z[k] += cd(1e-8 * (1.0 + std::abs(z[k])), 1e-8);
        biggest = 1.0;
        continue;
      }
      const cd ratio = v / dp;
      cd sum(0.0);
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k) sum += 1.0 / (z[k] - z[j]);
      }
      const cd step = ratio / (1.0 - ratio * sum);
      z[k] -= step;
      biggest = std::max(biggest, std::abs(step) / (1.0 + std::abs(z[k])));
    }
    if (biggest < 1e-16) break;
  }
  return z;
}

std::vector<NumericRoot> cluster(std::span<const cd> p, const std::vector<cd>& z) {
  std::vector<NumericRoot> out;
  std::vector<bool> used(z.size(), false);
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (used[i]) continue;
    std::vector<cd> members{z[i]};
    used[i] = true;
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      if (!used[j] && std::abs(z[j] - z[i]) <= 1e-6 * (1.0 + std::abs(z[i]))) {
        members.push_back(z[j]);
        used[j] = true;
      }
    }
    cd mean(0.0);
    for (auto m : members) mean += m;
    mean /= static_cast<double>(members.size());
    double spread = 0.0;
    for (auto m : members) spread = std::max(spread, std::abs(m - mean));
    NumericRoot r{mean, static_cast<int>(members.size()), spread};
    if (members.size() == 1) {
      cd dp;
      const cd v = eval(p, mean, &dp);
      const double n = static_cast<double>(p.size() - 1);
      r.error_bound = dp == cd(0.0) ? spread : n * std::abs(v / dp);
    }
    out.push_back(r);
  }
  return out;
}

void sort_roots(std::vector<NumericRoot>& roots) {
  std::sort(roots.begin(), roots.end(), [](const NumericRoot& a, const NumericRoot& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
}

}  // namespace

DenseUPoly to_dense(const Poly& p) {
  const auto used = p.used_variables();
  if (used.size() > 1) throw std::invalid_argument("expected a univariate polynomial, got " + p.to_string());
  DenseUPoly out;
  const int k = used.empty() ? -1 : p.index_of(used[0]);
  for (const auto& [e, c] : p.terms()) {
    const std::size_t d = k < 0 ? 0 : e[k];
    if (out.size() <= d) out.resize(d + 1, Rational(0));
    out[d] = c;
  }
  return out;
}

Poly from_dense(const DenseUPoly& c, const std::string& var) {
  Poly out(std::vector<std::string>{var});
  for (std::size_t k = 0; k < c.size(); ++k) {
    out += Poly::monomial({var}, {static_cast<std::uint32_t>(k)}, c[k]);
  }
  return out;
}

int RootSet::degree() const {
  int d = 0;
  for (const auto& [r, m] : rational_roots) d += m;
  for (const auto& r : numeric_roots) d += r.multiplicity;
  return d;
}

std::vector<std::complex<double>> RootSet::values() const {
  std::vector<std::complex<double>> out;
  for (const auto& [r, m] : rational_roots) out.insert(out.end(), m, cd(r.to_double(), 0.0));
  for (const auto& r : numeric_roots) out.insert(out.end(), r.multiplicity, r.value);
  return out;
}

double scaled_residual(std::span<const std::complex<double>> p, std::complex<double> z) {
  double scale = 0.0;
  double zk = 1.0;
  for (const auto& c : p) {
    scale += std::abs(c) * zk;
    zk *= std::abs(z);
  }
  if (scale == 0.0) return 0.0;
  return std::abs(eval(p, z)) / scale;
}

std::vector<NumericRoot> polynomial_roots(std::span<const std::complex<double>> ascending,
                                          const NumericOptions& opts) {
  std::vector<cd> p(ascending.begin(), ascending.end());
  while (!p.empty() && p.back() == cd(0.0)) p.pop_back();
  if (p.empty()) throw std::invalid_argument("roots of the zero polynomial");
  std::vector<NumericRoot> out;
  // Exact zeros first.
  std::size_t zeros = 0;
  while (zeros + 1 < p.size() && p[zeros] == cd(0.0)) ++zeros;
  if (zeros > 0) {
    out.push_back({cd(0.0), static_cast<int>(zeros), 0.0});
    p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(zeros));
  }
  if (p.size() > 1) {
    const auto z = aberth(p, opts);
    for (const auto& r : z) {
      if (!(std::isfinite(r.real()) && std::isfinite(r.imag())) || scaled_residual(p, r) > opts.tolerance) {
        throw NumericNonConvergence("Aberth iteration did not reach the residual tolerance");
      }
    }
    auto clustered = cluster(p, z);
    out.insert(out.end(), clustered.begin(), clustered.end());
  }
  sort_roots(out);
  return out;
}

RootSet roots_exact_first(const Poly& poly, const NumericOptions& opts) {
  DenseUPoly p = to_dense(poly);
  trim(p);
  if (p.empty()) throw std::invalid_argument("roots of the zero polynomial");
  const auto used = poly.used_variables();
  const std::string var = used.empty() ? (poly.variables().empty() ? "lambda" : poly.variables()[0]) : used[0];

  RootSet out;
  // Zero roots.
  int zero_mult = 0;
  while (p.size() > 1 && p[0].is_zero()) {
    p.erase(p.begin());
    ++zero_mult;
  }
  if (zero_mult > 0) out.rational_roots.emplace_back(Rational(0), zero_mult);

  // Candidate p/q with p | a0 and q | an on the integer-scaled polynomial.
  if (p.size() > 1) {
    std::vector<Rational> candidates;
    const auto ip = integer_scaled(p);
    const mpz_class limit("1000000000000");
    if (abs(ip.front()) <= limit && abs(ip.back()) <= limit) {
      const auto num = divisors(ip.front());
      const auto den = divisors(ip.back());
      for (const auto& a : num)
        for (const auto& b : den) {
          candidates.emplace_back(a, b);
          candidates.emplace_back(mpz_class(-a), b);
        }
    } else {
      // Very large constant or leading terms: test snapped numeric roots instead.
      const auto z = aberth(to_complex(p), opts);
      for (const auto& r : z) {
        if (std::abs(r.imag()) < 1e-6 * (1.0 + std::abs(r))) candidates.push_back(rational_approximation(r.real(), 1000000));
      }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto& r : candidates) {
      int mult = 0;
      while (p.size() > 1 && horner(p, r).is_zero()) {
        p = deflate(p, r);
        ++mult;
      }
      if (mult > 0) out.rational_roots.emplace_back(r, mult);
    }
  }
  std::sort(out.rational_roots.begin(), out.rational_roots.end());
  out.residual_factor = from_dense(p, var);

  if (p.size() > 1) {
    int power = 1;
    for (const auto& factor : squarefree_decomposition(p)) {
      if (factor.size() > 1) {
        const auto cp = to_complex(factor);
        const auto z = aberth(cp, opts);
        for (const auto& r : z) {
          if (!(std::isfinite(r.real()) && std::isfinite(r.imag())) || scaled_residual(cp, r) > opts.tolerance) {
            throw NumericNonConvergence("Aberth iteration did not reach the residual tolerance on " +
                                        from_dense(factor, var).to_string());
          }
          cd dp;
          const cd v = eval(cp, r, &dp);
          const double bound = dp == cd(0.0) ? 0.0 : static_cast<double>(factor.size() - 1) * std::abs(v / dp);
          out.numeric_roots.push_back({r, power, bound});
        }
      }
      ++power;
    }
    sort_roots(out.numeric_roots);
  }
  return out;
}

}  // namespace kovan
