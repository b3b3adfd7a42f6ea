#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "lyapcert/poly.hpp"

using namespace lyapcert;
using namespace lyapcert::testing;

TEST_CASE("evaluate: direct substitution and origin") {
  Polynomial p = x4y4();
  CHECK(p.evaluate(EvalPoint{{1.0, 1.0}}) == doctest::Approx(2.0));
  CHECK(p.evaluate(EvalPoint{{0.0, 0.0}}) == 0.0);

  // perturbed Motzkin at (1,1,1): 1 + 1 - 3 + 1 + 27/250
  Polynomial v = perturbed_motzkin();
  std::vector<Rational> ones{1, 1, 1};
  CHECK(v.evaluate_exact(ones) == Rational(27, 250));
  CHECK(v.evaluate(EvalPoint{{1.0, 1.0, 1.0}}) == doctest::Approx(0.108));
  CHECK(v.evaluate(EvalPoint{{0.0, 0.0, 0.0}}) == 0.0);

  CHECK_THROWS_AS(p.evaluate(EvalPoint{{1.0}}), std::invalid_argument);
}

TEST_CASE("arithmetic basics") {
  Polynomial x = Polynomial::variable(2, 0);
  Polynomial y = Polynomial::variable(2, 1);

  CHECK((x + (-x)).is_zero());

  Polynomial prod = (x + y) * (x - y);
  Polynomial expect(2);
  expect.add_term(Monomial{{2, 0}}, 1);
  expect.add_term(Monomial{{0, 2}}, -1);
  CHECK(prod == expect);

  // (x^2+y^2)^3 expands with the 1,3,3,1 binomial pattern
  Polynomial cube = pow(norm_squared(2), 3);
  CHECK(cube.terms().size() == 4);
  CHECK(cube.coeff(Monomial{{6, 0}}) == 1);
  CHECK(cube.coeff(Monomial{{4, 2}}) == 3);
  CHECK(cube.coeff(Monomial{{2, 4}}) == 3);
  CHECK(cube.coeff(Monomial{{0, 6}}) == 1);

  Polynomial q(3);
  CHECK_THROWS_AS(x + q, std::invalid_argument);
}

TEST_CASE("gradient") {
  Polynomial p = x4y4();
  auto g = p.gradient();
  Polynomial gx(2), gy(2);
  gx.add_term(Monomial{{3, 0}}, 4);
  gy.add_term(Monomial{{0, 3}}, 4);
  CHECK(g[0] == gx);
  CHECK(g[1] == gy);

  Polynomial c = Polynomial::constant(2, Rational(7, 3));
  for (const auto& d : c.gradient()) CHECK(d.is_zero());

  // third component of grad(perturbed Motzkin) at (1,1,1): -6 + 6 + (6/250)*9
  Polynomial v = perturbed_motzkin();
  std::vector<Rational> ones{1, 1, 1};
  CHECK(v.differentiate(2).evaluate_exact(ones) == Rational(54, 250));
  CHECK(v.differentiate(2).evaluate(EvalPoint{{1.0, 1.0, 1.0}}) == doctest::Approx(0.216));
}

TEST_CASE("grad_inner") {
  Polynomial s = norm_squared(2);
  Polynomial expect(2);
  expect.add_term(Monomial{{2, 0}}, 4);
  expect.add_term(Monomial{{0, 2}}, 4);
  CHECK(grad_inner(s, s) == expect);

  // grad_inner(V, V) is ||grad V||^2
  std::mt19937_64 rng(7);
  for (int k = 0; k < 10; ++k) {
    Polynomial v = random_form(rng, 3, 4);
    Polynomial norm2 = Polynomial::zero(3);
    for (const auto& d : v.gradient()) norm2 += d * d;
    CHECK(grad_inner(v, v) == norm2);
  }
}

TEST_CASE("homogenize") {
  // x1^2 + (1 - x1 x2)^2 homogenizes to x1^2 y^2 + (y^2 - x1 x2)^2, which
  // gains zeros at (1,0,0) and (0,1,0)
  Polynomial x1 = Polynomial::variable(2, 0);
  Polynomial x2 = Polynomial::variable(2, 1);
  Polynomial one = Polynomial::constant(2, 1);
  Polynomial p = x1 * x1 + (one - x1 * x2) * (one - x1 * x2);
  Polynomial ph = p.homogenize(4);
  CHECK(ph.nvars() == 3);
  CHECK(ph.degree_info().homogeneous);
  std::vector<Rational> z1{1, 0, 0}, z2{0, 1, 0}, off{1, 1, 1};
  CHECK(ph.evaluate_exact(z1) == 0);
  CHECK(ph.evaluate_exact(z2) == 0);
  CHECK(ph.evaluate_exact(off) == 1);  // 1 + (1-1)^2

  // homogenizing a form adds a variable that never appears
  Polynomial f = x4y4();
  Polynomial fh = f.homogenize(4);
  CHECK(fh.nvars() == 3);
  for (const auto& [m, c] : fh.terms()) CHECK(m.exps[2] == 0);

  CHECK_THROWS_AS(p.homogenize(3), std::invalid_argument);
}

TEST_CASE("degree_info") {
  CHECK(x4y4().degree_info().degree == 4);
  CHECK(x4y4().degree_info().homogeneous);

  Polynomial z = Polynomial::zero(2);
  auto zi = z.degree_info();
  CHECK(zi.zero);
  CHECK(zi.degree == 0);

  Polynomial v = perturbed_motzkin();
  CHECK(v.degree_info().degree == 6);
  CHECK(v.degree_info().homogeneous);

  Polynomial mixed = norm_squared(2) + Polynomial::constant(2, 1);
  CHECK_FALSE(mixed.degree_info().homogeneous);
}

TEST_CASE("property: Euler identity, exact") {
  std::mt19937_64 rng(42);
  for (int k = 0; k < 100; ++k) {
    int nvars = 2 + static_cast<int>(rng() % 3);
    int degree = 1 + static_cast<int>(rng() % 6);
    Polynomial p = random_form(rng, nvars, degree, 0.4);

    // polynomial identity <x, grad p> == degree * p
    Polynomial euler = Polynomial::zero(nvars);
    for (int i = 0; i < nvars; ++i)
      euler += Polynomial::variable(nvars, i) * p.differentiate(i);
    CHECK(euler == Rational(degree) * p);

    // and exactly at a random rational point
    auto pt = random_rational_point(rng, nvars);
    CHECK(euler.evaluate_exact(pt) == Rational(degree) * p.evaluate_exact(pt));
  }
}

TEST_CASE("property: homogenization round-trip and scaling") {
  std::mt19937_64 rng(43);
  for (int k = 0; k < 100; ++k) {
    int nvars = 2 + static_cast<int>(rng() % 2);
    int degree = 1 + static_cast<int>(rng() % 4);
    Polynomial p = random_form(rng, nvars, degree, 0.5);
    // make it inhomogeneous half the time
    if (rng() % 2) p += Polynomial::constant(nvars, random_rational(rng));

    int target = p.degree_info().degree + static_cast<int>(rng() % 3);
    Polynomial ph = p.homogenize(target);

    auto pt = random_rational_point(rng, nvars);
    std::vector<Rational> lifted = pt;
    lifted.push_back(1);
    CHECK(ph.evaluate_exact(lifted) == p.evaluate_exact(pt));

    // scaling law for the form: ph(lambda z) = lambda^target ph(z)
    Rational lambda = random_rational(rng, 4, 3);
    std::vector<Rational> z = random_rational_point(rng, nvars + 1);
    std::vector<Rational> lz = z;
    for (auto& c : lz) c *= lambda;
    CHECK(ph.evaluate_exact(lz) == rational_pow(lambda, target) * ph.evaluate_exact(z));
  }
}

TEST_CASE("property: ring laws on random triples") {
  std::mt19937_64 rng(44);
  for (int k = 0; k < 60; ++k) {
    int nvars = 2 + static_cast<int>(rng() % 2);
    Polynomial a = random_form(rng, nvars, static_cast<int>(rng() % 3) + 1, 0.5);
    Polynomial b = random_form(rng, nvars, static_cast<int>(rng() % 3) + 1, 0.5);
    Polynomial c = random_form(rng, nvars, static_cast<int>(rng() % 3) + 1, 0.5);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("mul degree additivity") {
  std::mt19937_64 rng(45);
  for (int k = 0; k < 20; ++k) {
    Polynomial a = random_form(rng, 2, 1 + static_cast<int>(rng() % 4), 0.7);
    Polynomial b = random_form(rng, 2, 1 + static_cast<int>(rng() % 4), 0.7);
    CHECK((a * b).degree_info().degree ==
          a.degree_info().degree + b.degree_info().degree);
  }
}
