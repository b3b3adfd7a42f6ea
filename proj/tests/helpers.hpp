#pragma once

#include <algorithm>
#include <functional>
#include <random>
#include <vector>

#include "lyapcert/poly.hpp"
#include "lyapcert/reduction.hpp"

namespace lyapcert::testing {

// x1^4 x2^2 + x1^2 x2^4 - 3 x1^2 x2^2 x3^2 + x3^6
inline Polynomial motzkin() {
  Polynomial p(3);
  p.add_term(Monomial{{4, 2, 0}}, 1);
  p.add_term(Monomial{{2, 4, 0}}, 1);
  p.add_term(Monomial{{2, 2, 2}}, -3);
  p.add_term(Monomial{{0, 0, 6}}, 1);
  return p;
}

// the Motzkin form plus (1/250)(x1^2+x2^2+x3^2)^3
inline Polynomial perturbed_motzkin() {
  return motzkin() + Rational(1, 250) * pow(norm_squared(3), 3);
}

// the printed degree-4 gradient-method witness for the perturbed Motzkin form
inline Polynomial example1_w() {
  Polynomial w(3);
  w.add_term(Monomial{{4, 0, 0}}, 9);
  w.add_term(Monomial{{0, 4, 0}}, 9);
  w.add_term(Monomial{{0, 0, 4}}, 3);
  w.add_term(Monomial{{2, 2, 0}}, -6);
  w.add_term(Monomial{{2, 0, 2}}, 6);
  w.add_term(Monomial{{0, 2, 2}}, 6);
  w.add_term(Monomial{{3, 1, 0}}, -1);
  w.add_term(Monomial{{1, 3, 0}}, -1);
  w.add_term(Monomial{{3, 0, 1}}, -1);
  w.add_term(Monomial{{2, 1, 1}}, -3);
  w.add_term(Monomial{{1, 2, 1}}, -3);
  w.add_term(Monomial{{0, 3, 1}}, -1);
  w.add_term(Monomial{{1, 1, 2}}, -4);
  w.add_term(Monomial{{1, 0, 3}}, -1);
  w.add_term(Monomial{{0, 1, 3}}, -1);
  return w;
}

inline Polynomial x4y4() {
  Polynomial p(2);
  p.add_term(Monomial{{4, 0}}, 1);
  p.add_term(Monomial{{0, 4}}, 1);
  return p;
}

// (x1 v -x2 v x4) & (-x2 v -x3 v x5) & (-x1 v x3 v -x5) & (x1 v x3 v x4)
inline CnfInstance paper_instance() {
  CnfInstance inst;
  inst.nvars = 5;
  auto cl = [](int a, int b, int c) {
    Clause k;
    k.lits = {Literal{std::abs(a), a < 0}, Literal{std::abs(b), b < 0}, Literal{std::abs(c), c < 0}};
    return k;
  };
  inst.clauses = {cl(1, -2, 4), cl(-2, -3, 5), cl(-1, 3, -5), cl(1, 3, 4)};
  return inst;
}

// clause pair with no exactly-one-true assignment
inline CnfInstance unsat_pair() {
  CnfInstance inst;
  inst.nvars = 3;
  Clause a, b;
  a.lits = {Literal{1, false}, Literal{2, false}, Literal{3, false}};
  b.lits = {Literal{1, true}, Literal{2, true}, Literal{3, true}};
  inst.clauses = {a, b};
  return inst;
}

inline Rational random_rational(std::mt19937_64& rng, int num_range = 6, int max_den = 4) {
  std::uniform_int_distribution<int> num(-num_range, num_range);
  std::uniform_int_distribution<int> den(1, max_den);
  return Rational(num(rng), den(rng));
}

// random form of the given degree with at least one term
inline Polynomial random_form(std::mt19937_64& rng, int nvars, int degree, double keep_prob = 0.6) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Polynomial p(nvars);
  // enumerate exponent vectors of the degree
  std::vector<int> e(nvars, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == nvars - 1) {
      e[pos] = left;
      if (coin(rng) < keep_prob) p.add_term(Monomial{e}, random_rational(rng));
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[pos] = k;
      rec(pos + 1, left - k);
    }
  };
  rec(0, degree);
  if (p.is_zero()) p.add_term(Monomial{[&] {
                     std::vector<int> lead(nvars, 0);
                     lead[0] = degree;
                     return lead;
                   }()},
                   1);
  return p;
}

inline std::vector<Rational> random_rational_point(std::mt19937_64& rng, int nvars) {
  std::vector<Rational> pt;
  pt.reserve(nvars);
  for (int i = 0; i < nvars; ++i) pt.push_back(random_rational(rng, 5, 3));
  return pt;
}

inline CnfInstance random_instance(std::mt19937_64& rng, int nvars, int nclauses) {
  CnfInstance inst;
  inst.nvars = nvars;
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<int> vars(nvars);
  for (int i = 0; i < nvars; ++i) vars[i] = i + 1;
  for (int c = 0; c < nclauses; ++c) {
    std::shuffle(vars.begin(), vars.end(), rng);
    Clause cl;
    for (int i = 0; i < 3; ++i) cl.lits[i] = Literal{vars[i], coin(rng) == 1};
    inst.clauses.push_back(cl);
  }
  return inst;
}

}  // namespace lyapcert::testing
