#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "lyapcert/rational.hpp"

namespace lyapcert {

// Exponent vector of one monomial; length equals the ambient variable count.
struct Monomial {
  std::vector<int> exps;

  int degree() const;
  bool operator==(const Monomial&) const = default;
};

// Canonical graded-lex order: lower total degree first; within a degree the
// lexicographically larger exponent vector comes first, so iteration over a
// homogeneous polynomial yields x1^d, x1^{d-1}x2, ..., xn^d.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

// State-space sample point (dimensionless coordinates).
struct EvalPoint {
  std::vector<double> coords;
};

// Sparse multivariate polynomial with exact rational coefficients.
// Immutable in spirit: all operations return new values, zero-coefficient
// terms are never stored, and the term map keeps the canonical order used
// for serialization. Safe to share across threads.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational, MonomialOrder>;

  explicit Polynomial(int nvars);

  static Polynomial zero(int nvars) { return Polynomial(nvars); }
  static Polynomial constant(int nvars, const Rational& c);
  static Polynomial variable(int nvars, int index);
  static Polynomial term(int nvars, std::vector<int> exps, const Rational& c);

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coeff(const Monomial& m) const;
  Rational max_abs_coeff() const;  // 0 for the zero polynomial

  // Adds c * x^m, collecting with any existing term and dropping zeros.
  void add_term(const Monomial& m, const Rational& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& q);
  Polynomial& operator-=(const Polynomial& q);
  friend Polynomial operator+(Polynomial p, const Polynomial& q) { return p += q; }
  friend Polynomial operator-(Polynomial p, const Polynomial& q) { return p -= q; }
  friend Polynomial operator*(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator*(const Rational& c, Polynomial p);
  bool operator==(const Polynomial&) const = default;

  // Exact rational accumulation over the terms, rounded once at the end.
  double evaluate(const EvalPoint& pt) const;
  Rational evaluate_exact(std::span<const Rational> pt) const;

  Polynomial differentiate(int var) const;
  std::vector<Polynomial> gradient() const;

  // Appends one fresh variable (index nvars) and pads every term up to
  // target_degree. Setting that variable to 1 recovers the input.
  Polynomial homogenize(int target_degree) const;

  struct DegreeInfo {
    int degree;        // 0 for the zero polynomial, by convention
    bool homogeneous;  // vacuously true for the zero polynomial
    bool zero;
  };
  DegreeInfo degree_info() const;

  // Human-readable rendering, e.g. "x1^4*x2^2 - 3*x1^2*x2^2*x3^2".
  std::string str() const;

 private:
  int nvars_;
  TermMap terms_;
};

// sum_i (dp/dx_i)(dq/dx_i); for forms of degrees a and b the result is a
// form of degree a+b-2.
Polynomial grad_inner(const Polynomial& p, const Polynomial& q);

Polynomial pow(Polynomial base, int k);

// x1^2 + ... + xn^2
Polynomial norm_squared(int nvars);

}  // namespace lyapcert
