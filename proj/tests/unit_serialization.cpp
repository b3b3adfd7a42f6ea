#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "lyapcert/serialization.hpp"

using namespace lyapcert;
using namespace lyapcert::testing;

TEST_CASE("rational literal parsing") {
  CHECK(rational_from_string("0.004") == Rational(1, 250));
  CHECK(rational_from_string("-3") == Rational(-3));
  CHECK(rational_from_string("27/250") == Rational(27, 250));
  CHECK(rational_from_string("-3.25") == Rational(-13, 4));
  CHECK(rational_from_string(" 5 ") == Rational(5));
  CHECK_THROWS_AS(rational_from_string("1e-3"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_string("3/0"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_string(""), std::invalid_argument);
}

TEST_CASE("polynomial JSON round-trips exactly") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 30; ++k) {
    Polynomial p = random_form(rng, 2 + static_cast<int>(rng() % 3),
                               1 + static_cast<int>(rng() % 5), 0.5);
    Polynomial q = polynomial_from_json(polynomial_to_json(p));
    CHECK(p == q);
  }

  Polynomial v = perturbed_motzkin();
  CHECK(polynomial_from_json(polynomial_to_json(v)) == v);

  // serialization is deterministic
  CHECK(polynomial_to_json(v) == polynomial_to_json(perturbed_motzkin()));
}

TEST_CASE("polynomial JSON accepts exact decimals and integers") {
  auto p = polynomial_from_json(R"({"nvars": 2, "terms": [
      {"exps": [2, 0], "coef": "0.5"},
      {"exps": [0, 2], "coef": 3}
  ]})");
  CHECK(p.coeff(Monomial{{2, 0}}) == Rational(1, 2));
  CHECK(p.coeff(Monomial{{0, 2}}) == Rational(3));

  CHECK_THROWS(polynomial_from_json(R"({"nvars": 2, "terms": [
      {"exps": [2, 0], "coef": 0.5}
  ]})"));
}

TEST_CASE("vector field JSON round-trip") {
  VectorField f = gradient_system(x4y4());
  VectorField g = vector_field_from_json(vector_field_to_json(f));
  CHECK(g.nvars == f.nvars);
  CHECK(g.degree == f.degree);
  CHECK(g.is_homogeneous == f.is_homogeneous);
  for (int i = 0; i < f.nvars; ++i) CHECK(g.components[i] == f.components[i]);
}

TEST_CASE("trajectory CSV shape") {
  Trajectory traj;
  traj.times = {0.0, 0.5, 1.0};
  traj.states = {EvalPoint{{1.0, 0.0}}, EvalPoint{{0.5, 0.25}}, EvalPoint{{0.25, 0.125}}};
  std::function<double(const EvalPoint&)> v = [](const EvalPoint& p) {
    return p.coords[0] + p.coords[1];
  };
  std::string csv = trajectory_to_csv(traj, &v, "V");
  CHECK(csv.substr(0, csv.find('\n')) == "t,x1,x2,V");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  CHECK(csv.find("0.5,0.25,0.75") != std::string::npos);
}
