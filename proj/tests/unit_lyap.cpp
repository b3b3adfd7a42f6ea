#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "lyapcert/lyap.hpp"

using namespace lyapcert;
using namespace lyapcert::testing;

namespace {

Polynomial neg_lie_closed_form(double theta) {
  // -4 sin(theta) (x^6 + y^6), with sin(theta) entering as the same dyadic
  // literal the field factory uses
  Polynomial p(2);
  Rational s = rational_from_double(std::sin(theta));
  p.add_term(Monomial{{6, 0}}, Rational(-4) * s);
  p.add_term(Monomial{{0, 6}}, Rational(-4) * s);
  return p;
}

}  // namespace

TEST_CASE("lie_derivative: closed form along the planar family, exact") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> th(-3.0, 3.0);
  for (int k = 0; k < 100; ++k) {
    double theta = th(rng);
    CHECK(lie_derivative(x4y4(), family_nonmonotone(theta)) == neg_lie_closed_form(theta));
  }
}

TEST_CASE("lie_derivative: gradient systems give -||grad V||^2, exact") {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 25; ++k) {
    Polynomial v = random_form(rng, 2 + static_cast<int>(rng() % 2), 4, 0.5);
    Polynomial expect = Polynomial::zero(v.nvars());
    for (const auto& d : v.gradient()) expect -= d * d;
    CHECK(lie_derivative(v, gradient_system(v)) == expect);
  }

  Polynomial c = Polynomial::constant(2, 5);
  CHECK(lie_derivative(c, family_nonmonotone(0.3)).is_zero());
}

TEST_CASE("symmetrize under the quarter-turn map") {
  SymmetrySpec q = quarter_turn_2d();

  // x^6 averages to (x^6 + y^6)/2
  Polynomial x6 = Polynomial::term(2, {6, 0}, 1);
  Polynomial expect(2);
  expect.add_term(Monomial{{6, 0}}, Rational(1, 2));
  expect.add_term(Monomial{{0, 6}}, Rational(1, 2));
  CHECK(symmetrize(x6, q) == expect);

  // an invariant form is a fixed point of the averaging
  std::mt19937_64 rng(5);
  Polynomial inv = symmetrize(random_form(rng, 2, 6, 0.7), q);
  CHECK(symmetrize(inv, q) == inv);

  // x^5 y averages to (x^5 y - x y^5)/2: the group-average formula, applied
  // term by term
  Polynomial x5y = Polynomial::term(2, {5, 1}, 1);
  Polynomial expect2(2);
  expect2.add_term(Monomial{{5, 1}}, Rational(1, 2));
  expect2.add_term(Monomial{{1, 5}}, Rational(-1, 2));
  CHECK(symmetrize(x5y, q) == expect2);

  // x^3 y^3 is annihilated
  CHECK(symmetrize(Polynomial::term(2, {3, 3}, 1), q).is_zero());

  SymmetrySpec bad = q;
  bad.order = 3;  // generator^3 != id
  CHECK_THROWS_AS(symmetrize(x6, bad), std::invalid_argument);
}

TEST_CASE("find_lyapunov on the planar family") {
  VectorField f = family_nonmonotone(0.01);

  LyapunovOutcome deg4 = find_lyapunov(f, 4);
  REQUIRE(deg4.status == LyapStatus::found);
  REQUIRE(deg4.V.has_value());
  CHECK(deg4.V->degree_info().degree == 4);
  CHECK(deg4.V->degree_info().homogeneous);
  CHECK(static_cast<bool>(validate_certificate(
      *deg4.V - rational_from_double(deg4.eps_v) * pow(norm_squared(2), 2), *deg4.cert_V)));
  Polynomial vdot = lie_derivative(*deg4.V, f);
  CHECK(static_cast<bool>(validate_certificate(
      -vdot - rational_from_double(deg4.eps_vdot) * pow(norm_squared(2), 3),
      *deg4.cert_Vdot)));

  LyapunovOutcome deg6 = find_lyapunov(f, 6);
  CHECK(deg6.status == LyapStatus::infeasible_at_degree);
}

TEST_CASE("find_lyapunov: a gradient system admits its own potential") {
  VectorField f = gradient_system(x4y4());
  LyapunovOutcome r = find_lyapunov(f, 4);
  REQUIRE(r.status == LyapStatus::found);

  // numeric agreement on the sphere, up to the stated relative slack
  NumericReport num = verify_lyapunov_numeric(*r.V, f, 10000);
  CHECK(num.min_V >= r.eps_v * (1 - 1e-3));
  CHECK(num.max_Vdot <= -r.eps_vdot * (1 - 1e-3));
}

TEST_CASE("find_lyapunov: symmetry restriction is sound") {
  VectorField f = family_nonmonotone(0.05);
  LyapunovOutcome sym = find_lyapunov(f, 4, 1e-6, quarter_turn_2d());
  REQUIRE(sym.status == LyapStatus::found);

  // the restricted winner satisfies the full (unrestricted) constraints
  CHECK(apply_generator(*sym.V, quarter_turn_2d()) == *sym.V);
  CHECK(static_cast<bool>(validate_certificate(
      *sym.V - rational_from_double(sym.eps_v) * pow(norm_squared(2), 2), *sym.cert_V)));
  Polynomial vdot = lie_derivative(*sym.V, f);
  CHECK(static_cast<bool>(validate_certificate(
      -vdot - rational_from_double(sym.eps_vdot) * pow(norm_squared(2), 3), *sym.cert_Vdot)));

  LyapunovOutcome full = find_lyapunov(f, 4);
  CHECK(full.status == LyapStatus::found);

  // and restriction agrees with the full search at degree 6 as well
  CHECK(find_lyapunov(f, 6, 1e-6, quarter_turn_2d()).status == find_lyapunov(f, 6).status);
}

TEST_CASE("find_lyapunov: degree/field validation") {
  VectorField f = family_nonmonotone(0.1);
  CHECK_THROWS_AS(find_lyapunov(f, 3), std::invalid_argument);
  CHECK_THROWS_AS(find_lyapunov(f, 0), std::invalid_argument);

  Polynomial inhom = norm_squared(2) + Polynomial::term(2, {3, 0}, 1);
  VectorField bad = make_vector_field({inhom, norm_squared(2)});
  CHECK_THROWS_AS(find_lyapunov(bad, 4), std::invalid_argument);
}

TEST_CASE("certify_positivity_gradient: the perturbed Motzkin form") {
  Polynomial v = perturbed_motzkin();

  GradientPositivityOutcome quad = certify_positivity_gradient(v, 2);
  CHECK(quad.status == FamilyStatus::infeasible);

  GradientPositivityOutcome quartic = certify_positivity_gradient(v, 4);
  REQUIRE(quartic.status == FamilyStatus::found);
  REQUIRE(quartic.W.has_value());
  CHECK(quartic.W->degree_info().degree == 4);
  CHECK(static_cast<bool>(validate_certificate(
      *quartic.W - rational_from_double(quartic.eps_w) * pow(norm_squared(3), 2),
      *quartic.cert_W)));
  CHECK(static_cast<bool>(validate_certificate(
      grad_inner(*quartic.W, v) -
          rational_from_double(quartic.eps_inner) * pow(norm_squared(3), 4),
      *quartic.cert_inner)));

  // spot-check: a certified-positive form is strictly positive on samples
  NumericReport num = verify_lyapunov_numeric(v, gradient_system(v), 100000);
  CHECK(num.min_V > 0);
}

TEST_CASE("certify_positivity_gradient: Euler-aligned trivial case") {
  Polynomial v = pow(norm_squared(2), 2);  // (x^2+y^2)^2
  GradientPositivityOutcome r = certify_positivity_gradient(v, 2);
  CHECK(r.status == FamilyStatus::found);

  // W = x^2 + y^2 itself satisfies both constraints: <grad W, grad V> = 8 V
  Polynomial w = norm_squared(2);
  Polynomial inner = grad_inner(w, v);
  CHECK(inner == Rational(8) * v);
  CHECK(check_sos(inner).status == SosStatus::sos);
}

TEST_CASE("the printed Example-1 witness satisfies both sos constraints") {
  Polynomial w = example1_w();
  Polynomial v = perturbed_motzkin();

  SosVerdict w_sos = check_sos(w);
  CHECK(w_sos.status == SosStatus::sos);
  CHECK(w_sos.margin > 1e-6);  // strictly positive definite Gram

  SosVerdict inner_sos = check_sos(grad_inner(w, v));
  CHECK(inner_sos.status == SosStatus::sos);
  CHECK(inner_sos.margin > 1e-6);
}

TEST_CASE("gradient-system completeness for certified-positive forms") {
  // the perturbed Motzkin form was certified positive definite, so the
  // search over sextics for its own gradient system must succeed
  Polynomial v = perturbed_motzkin();
  LyapunovOutcome r = find_lyapunov(gradient_system(v), 6);
  CHECK(r.status == LyapStatus::found);
}

TEST_CASE("verify_lyapunov_numeric") {
  VectorField f = family_nonmonotone(0.5);
  NumericReport rep = verify_lyapunov_numeric(x4y4(), f, 10000);
  CHECK(rep.min_V > 0);
  CHECK(rep.max_Vdot < 0);
  // closed form: Vdot = -4 sin(0.5) (x^6+y^6); its sphere max is at x^6+y^6 = 1/8
  CHECK(rep.max_Vdot <= -4 * std::sin(0.5) / 8 * (1 + 1e-9));

  // theta = 0: Vdot is the zero polynomial, the maximum is exactly 0
  NumericReport flat = verify_lyapunov_numeric(x4y4(), family_nonmonotone(0.0), 1000);
  CHECK(flat.max_Vdot == 0.0);

  // an indefinite V fails positivity
  Polynomial indef(2);
  indef.add_term(Monomial{{2, 0}}, 1);
  indef.add_term(Monomial{{0, 2}}, -1);
  NumericReport neg = verify_lyapunov_numeric(indef, f, 1000);
  CHECK(neg.min_V < 0);

  // determinism under a fixed seed
  NumericReport again = verify_lyapunov_numeric(x4y4(), f, 10000);
  CHECK(again.min_V == rep.min_V);
  CHECK(again.max_Vdot == rep.max_Vdot);
}

TEST_CASE("power closure, numerically") {
  VectorField f = family_nonmonotone(0.3);
  LyapunovOutcome r = find_lyapunov(f, 4);
  REQUIRE(r.status == LyapStatus::found);
  Polynomial v2 = (*r.V) * (*r.V);
  NumericReport rep = verify_lyapunov_numeric(v2, f, 10000);
  CHECK(rep.min_V > 0);
  CHECK(rep.max_Vdot < 0);
}

TEST_CASE("theta_sweep: coarse behavior") {
  auto factory = [](double th) { return family_nonmonotone(th); };

  CHECK_THROWS_AS(theta_sweep(factory, 6, 0.05, 0.05, 1e-3), std::invalid_argument);

  // degree 4 is feasible across the whole range: no bracket
  SweepResult deg4 = theta_sweep(factory, 4, 0.001, 3.0, 1e-2);
  CHECK_FALSE(deg4.bracket.has_value());
  CHECK(deg4.lo_status == LyapStatus::found);
  CHECK(deg4.hi_status == LyapStatus::found);
  for (const auto& p : deg4.probes) CHECK(p.status == LyapStatus::found);

  // degree 6 flips from infeasible to feasible inside (0.001, 0.1)
  SweepResult deg6 = theta_sweep(factory, 6, 0.001, 0.1, 1e-3);
  REQUIRE(deg6.bracket.has_value());
  CHECK(deg6.bracket->second - deg6.bracket->first <= 1e-3);
  CHECK(deg6.lo_status == LyapStatus::infeasible_at_degree);
  CHECK(deg6.hi_status == LyapStatus::found);
}
