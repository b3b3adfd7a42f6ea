#include "lyapcert/poly.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace lyapcert {

int Monomial::degree() const {
  return std::accumulate(exps.begin(), exps.end(), 0);
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  return a.exps > b.exps;  // lexicographically larger vector first
}

Polynomial::Polynomial(int nvars) : nvars_(nvars) {
  if (nvars < 1) throw std::invalid_argument("polynomial needs at least one variable");
}

Polynomial Polynomial::constant(int nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Monomial{std::vector<int>(nvars, 0)}, c);
  return p;
}

Polynomial Polynomial::variable(int nvars, int index) {
  if (index < 0 || index >= nvars) throw std::invalid_argument("variable index out of range");
  std::vector<int> e(nvars, 0);
  e[index] = 1;
  return term(nvars, std::move(e), 1);
}

Polynomial Polynomial::term(int nvars, std::vector<int> exps, const Rational& c) {
  if (static_cast<int>(exps.size()) != nvars)
    throw std::invalid_argument("exponent vector length != nvars");
  for (int e : exps)
    if (e < 0) throw std::invalid_argument("negative exponent");
  Polynomial p(nvars);
  p.add_term(Monomial{std::move(exps)}, c);
  return p;
}

Rational Polynomial::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::max_abs_coeff() const {
  Rational best = 0;
  for (const auto& [m, c] : terms_) {
    Rational a = c < 0 ? Rational(-c) : c;
    if (a > best) best = a;
  }
  return best;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (static_cast<int>(m.exps.size()) != nvars_)
    throw std::invalid_argument("monomial length != nvars");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r(nvars_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& q) {
  if (q.nvars_ != nvars_) throw std::invalid_argument("dimension mismatch in add");
  for (const auto& [m, c] : q.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& q) {
  if (q.nvars_ != nvars_) throw std::invalid_argument("dimension mismatch in sub");
  for (const auto& [m, c] : q.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
  if (p.nvars_ != q.nvars_) throw std::invalid_argument("dimension mismatch in mul");
  Polynomial r(p.nvars_);
  for (const auto& [mp, cp] : p.terms_) {
    for (const auto& [mq, cq] : q.terms_) {
      Monomial m = mp;
      for (int i = 0; i < r.nvars_; ++i) m.exps[i] += mq.exps[i];
      r.add_term(m, cp * cq);
    }
  }
  return r;
}

Polynomial operator*(const Rational& c, Polynomial p) {
  if (c == 0) return Polynomial::zero(p.nvars_);
  for (auto& [m, v] : p.terms_) v *= c;
  return p;
}

double Polynomial::evaluate(const EvalPoint& pt) const {
  if (static_cast<int>(pt.coords.size()) != nvars_)
    throw std::invalid_argument("evaluation point length != nvars");
  std::vector<Rational> coords;
  coords.reserve(nvars_);
  for (double x : pt.coords) coords.push_back(rational_from_double(x));
  return to_double(evaluate_exact(coords));
}

Rational Polynomial::evaluate_exact(std::span<const Rational> pt) const {
  if (static_cast<int>(pt.size()) != nvars_)
    throw std::invalid_argument("evaluation point length != nvars");
  Rational acc = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < nvars_; ++i)
      if (m.exps[i] > 0) t *= rational_pow(pt[i], m.exps[i]);
    acc += t;
  }
  return acc;
}

Polynomial Polynomial::differentiate(int var) const {
  if (var < 0 || var >= nvars_) throw std::invalid_argument("variable index out of range");
  Polynomial r(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m.exps[var] == 0) continue;
    Monomial d = m;
    d.exps[var] -= 1;
    r.add_term(d, c * m.exps[var]);
  }
  return r;
}

std::vector<Polynomial> Polynomial::gradient() const {
  std::vector<Polynomial> g;
  g.reserve(nvars_);
  for (int i = 0; i < nvars_; ++i) g.push_back(differentiate(i));
  return g;
}

Polynomial Polynomial::homogenize(int target_degree) const {
  auto info = degree_info();
  if (target_degree < info.degree)
    throw std::invalid_argument("homogenization degree below polynomial degree");
  Polynomial r(nvars_ + 1);
  for (const auto& [m, c] : terms_) {
    Monomial h;
    h.exps = m.exps;
    h.exps.push_back(target_degree - m.degree());
    r.add_term(h, c);
  }
  return r;
}

Polynomial::DegreeInfo Polynomial::degree_info() const {
  if (terms_.empty()) return {0, true, true};
  int maxdeg = 0, mindeg = -1;
  for (const auto& [m, c] : terms_) {
    int d = m.degree();
    maxdeg = std::max(maxdeg, d);
    mindeg = mindeg < 0 ? d : std::min(mindeg, d);
  }
  return {maxdeg, mindeg == maxdeg, false};
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  // print highest degree first; within a degree keep canonical order
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational a = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) out << "-";
      first = false;
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    bool coef_one = (a == 1);
    bool has_vars = m.degree() > 0;
    if (!coef_one || !has_vars) out << to_string(a);
    bool printed = !coef_one || !has_vars;
    for (int i = 0; i < nvars_; ++i) {
      if (m.exps[i] == 0) continue;
      if (printed) out << "*";
      out << "x" << (i + 1);
      if (m.exps[i] > 1) out << "^" << m.exps[i];
      printed = true;
    }
  }
  return out.str();
}

Polynomial grad_inner(const Polynomial& p, const Polynomial& q) {
  if (p.nvars() != q.nvars()) throw std::invalid_argument("dimension mismatch in grad_inner");
  Polynomial r = Polynomial::zero(p.nvars());
  for (int i = 0; i < p.nvars(); ++i) r += p.differentiate(i) * q.differentiate(i);
  return r;
}

Polynomial pow(Polynomial base, int k) {
  if (k < 0) throw std::invalid_argument("negative polynomial power");
  Polynomial result = Polynomial::constant(base.nvars(), 1);
  while (k > 0) {
    if (k & 1) result = result * base;
    if (k >>= 1) base = base * base;
  }
  return result;
}

Polynomial norm_squared(int nvars) {
  Polynomial r(nvars);
  for (int i = 0; i < nvars; ++i) {
    std::vector<int> e(nvars, 0);
    e[i] = 2;
    r.add_term(Monomial{std::move(e)}, 1);
  }
  return r;
}

}  // namespace lyapcert
