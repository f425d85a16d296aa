#include "kovan/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kovan {

namespace {

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::complex<double> ipow(std::complex<double> base, std::uint32_t e) {
  std::complex<double> out(1.0, 0.0);
  while (e > 0) {
    if (e & 1U) out *= base;
    base *= base;
    e >>= 1U;
  }
  return out;
}

}  // namespace

std::vector<std::string> merge_variables(const std::vector<std::string>& a,
                                         const std::vector<std::string>& b) {
  std::vector<std::string> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Poly::Poly(std::vector<std::string> variables) : vars_(sorted_unique(std::move(variables))) {}

Poly Poly::constant(const Rational& c) {
  Poly p;
  if (!c.is_zero()) p.terms_.emplace(Exponents{}, c);
  return p;
}

Poly Poly::variable(std::string name) {
  Poly p(std::vector<std::string>{std::move(name)});
  p.terms_.emplace(Exponents{1}, Rational(1));
  return p;
}

Poly Poly::monomial(std::vector<std::string> variables, Exponents exponents,
                    const Rational& coefficient) {
  if (variables.size() != exponents.size()) {
    throw std::invalid_argument("monomial: variable/exponent length mismatch");
  }
  std::map<std::string, std::uint32_t> by_name;
  for (std::size_t i = 0; i < variables.size(); ++i) by_name[variables[i]] += exponents[i];
  Poly p(std::move(variables));
  Exponents e(p.vars_.size(), 0);
  for (std::size_t i = 0; i < p.vars_.size(); ++i) e[i] = by_name[p.vars_[i]];
  p.add_term(e, coefficient);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 &&
          std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                      [](std::uint32_t x) { return x == 0; }));
}

Rational Poly::constant_term() const { return coefficient(Exponents(vars_.size(), 0)); }

Rational Poly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Poly::total_degree() const {
  int best = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (auto x : e) d += static_cast<int>(x);
    best = std::max(best, d);
  }
  return best;
}

int Poly::index_of(std::string_view var) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), var);
  if (it == vars_.end() || *it != var) return -1;
  return static_cast<int>(it - vars_.begin());
}

int Poly::degree_in(std::string_view var) const {
  const int k = index_of(var);
  if (k < 0) return terms_.empty() ? -1 : 0;
  int best = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_) best = std::max(best, static_cast<int>(e[k]));
  return best;
}

std::vector<std::string> Poly::used_variables() const {
  std::vector<bool> used(vars_.size(), false);
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < e.size(); ++i) used[i] = used[i] || e[i] > 0;
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (used[i]) out.push_back(vars_[i]);
  }
  return out;
}

Poly Poly::over(std::vector<std::string> universe) const {
  Poly out(std::move(universe));
  if (out.vars_ == vars_) {
    out.terms_ = terms_;
    return out;
  }
  std::vector<int> where(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) where[i] = out.index_of(vars_[i]);
  for (const auto& [e, c] : terms_) {
    Exponents ne(out.vars_.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (where[i] < 0) {
        throw std::invalid_argument("Poly::over: variable '" + vars_[i] + "' missing from universe");
      }
      ne[where[i]] = e[i];
    }
    out.terms_.emplace(std::move(ne), c);
  }
  return out;
}

void Poly::add_term(const Exponents& e, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Poly::align_with(const Poly& other) {
  if (vars_ == other.vars_) return;
  *this = over(merge_variables(vars_, other.vars_));
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Poly& Poly::operator+=(const Poly& o) {
  align_with(o);
  if (vars_ == o.vars_) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
  } else {
    const Poly oo = o.over(vars_);
    for (const auto& [e, c] : oo.terms_) add_term(e, c);
  }
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) {
    return Poly(merge_variables(a.vars_, b.vars_));
  }
  const Poly* pa = &a;
  const Poly* pb = &b;
  Poly aa, bb;
  if (a.vars_ != b.vars_) {
    auto u = merge_variables(a.vars_, b.vars_);
    aa = a.over(u);
    bb = b.over(u);
    pa = &aa;
    pb = &bb;
  }
  Poly out(pa->vars_);
  Exponents e(pa->vars_.size());
  for (const auto& [ea, ca] : pa->terms_) {
    for (const auto& [eb, cb] : pb->terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, x] : terms_) x *= c;
  return *this;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
  const auto u = merge_variables(a.vars_, b.vars_);
  return a.over(u).terms_ == b.over(u).terms_;
}

Poly Poly::derivative(std::string_view var) const {
  Poly out(vars_);
  const int k = index_of(var);
  if (k < 0) return out;
  for (const auto& [e, c] : terms_) {
    if (e[k] == 0) continue;
    Exponents ne = e;
    ne[k] -= 1;
    out.add_term(ne, c * Rational(static_cast<long>(e[k])));
  }
  return out;
}

Poly Poly::pow(unsigned exponent) const {
  Poly out = Poly::constant(1).over(vars_);
  Poly base = *this;
  while (exponent > 0) {
    if (exponent & 1U) out *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return out;
}

Poly Poly::substitute(const std::map<std::string, Poly>& bindings) const {
  // Variables without a binding pass through unchanged.
  std::vector<Poly> images(vars_.size());
  std::vector<std::string> universe;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = bindings.find(vars_[i]);
    images[i] = it == bindings.end() ? Poly::variable(vars_[i]) : it->second;
    universe = merge_variables(universe, images[i].vars_);
  }
  for (auto& img : images) img = img.over(universe);

  // Cache powers of each image, they recur across terms.
  std::vector<std::vector<Poly>> powers(vars_.size());
  auto power_of = [&](std::size_t i, std::uint32_t n) -> const Poly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Poly::constant(1).over(universe));
    while (cache.size() <= n) cache.push_back(cache.back() * images[i]);
    return cache[n];
  };

  Poly out(universe);
  for (const auto& [e, c] : terms_) {
    Poly term = Poly::constant(c).over(universe);
    for (std::size_t i = 0; i < e.size() && !term.is_zero(); ++i) {
      if (e[i] > 0) term *= power_of(i, e[i]);
    }
    out += term;
  }
  return out;
}

Rational Poly::evaluate(const std::map<std::string, Rational>& values) const {
  std::vector<Rational> aligned(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = values.find(vars_[i]);
    if (it != values.end()) {
      aligned[i] = it->second;
      continue;
    }
    bool used = false;
    for (const auto& [e, c] : terms_) used = used || e[i] > 0;
    if (used) throw std::invalid_argument("evaluate: no value for variable '" + vars_[i] + "'");
  }
  return evaluate(std::span<const Rational>(aligned));
}

Rational Poly::evaluate(std::span<const Rational> values) const {
  if (values.size() != vars_.size()) throw std::invalid_argument("evaluate: arity mismatch");
  Rational out(0);
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > 0) t *= kovan::pow(values[i], e[i]);
    }
    out += t;
  }
  return out;
}

std::complex<double> Poly::evaluate(std::span<const std::complex<double>> values) const {
  if (values.size() != vars_.size()) throw std::invalid_argument("evaluate: arity mismatch");
  std::complex<double> out(0.0, 0.0);
  for (const auto& [e, c] : terms_) {
    std::complex<double> t(c.to_double(), 0.0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > 0) t *= ipow(values[i], e[i]);
    }
    out += t;
  }
  return out;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest terms first.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    const bool negative = c.sign() < 0;
    const Rational mag = abs(c);
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    std::vector<std::string> factors;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      factors.push_back(e[i] == 1 ? vars_[i] : vars_[i] + "^" + std::to_string(e[i]));
    }
    if (factors.empty()) {
      os << mag.to_string();
      continue;
    }
    // "1/2*x" reads back as (1/2)*x: * and / associate left to right.
    if (!mag.is_one()) os << mag.to_string() << "*";
    for (std::size_t k = 0; k < factors.size(); ++k) {
      if (k > 0) os << "*";
      os << factors[k];
    }
  }
  return os.str();
}

}  // namespace kovan
