#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "lyapcert/poly.hpp"

namespace lyapcert {

// Polynomial vector field xdot = f(x) with an equilibrium at the origin.
struct VectorField {
  int nvars = 0;
  std::vector<Polynomial> components;
  int degree = 0;
  bool is_homogeneous = false;
};

// Validates the components (no constant terms; f(0) = 0) and fills in the
// degree/homogeneity metadata. Every component must be zero or, for a
// homogeneous field, a form of the shared degree.
VectorField make_vector_field(std::vector<Polynomial> components);

// The rotated planar cubic family: a rotation by theta applied to the base
// field (-2*lambda*y*(x^2+y^2) - 2y*(2x^2+y^2), 4*lambda*x*(x^2+y^2) + 2x*(2x^2+y^2)).
// At theta = 0 every orbit of the base field is periodic (the origin is a
// center); for 0 < theta < pi the origin is asymptotically stable.
VectorField family_rotated_center(double theta, double lambda);

// The planar cubic family (xdot, ydot) = [[-sin t, cos t], [-cos t, -sin t]] (x^3, y^3).
// At theta = 0 orbits trace level sets of x^4 + y^4.
VectorField family_nonmonotone(double theta);

enum class TrajectoryVerdict { converged, periodic_suspected, diverged, budget_exhausted };

std::string to_string(TrajectoryVerdict v);

struct IntegrationOptions {
  double base_step = 1e-3;      // scaled by 1/||x||^(deg-1) to track homogeneous speed
  double conv_radius = 1e-6;
  double blowup_radius = 1e6;
  double tube_radius = 1e-4;    // return-to-start tube for periodicity
  long max_steps = 1'000'000;
  int record_stride = 0;        // 0 = choose automatically (~50k recorded states)
};

// All verdicts are empirical observations of one RK4 run; they never feed
// back into certificate logic.
struct Trajectory {
  std::vector<double> times;
  std::vector<EvalPoint> states;
  TrajectoryVerdict verdict = TrajectoryVerdict::budget_exhausted;
  long steps_taken = 0;
  double winding_angle = 0;  // accumulated polar angle of the (x1,x2) projection
  bool nonfinite = false;
};

// Fixed-scaling classical RK4. Terminates on ||x|| <= conv_radius (converged),
// ||x|| >= blowup_radius or a non-finite state (diverged), a return to within
// tube_radius of x0 after a full winding (periodic_suspected), or the step
// budget (budget_exhausted).
Trajectory integrate(const VectorField& f, const EvalPoint& x0,
                     const IntegrationOptions& opts = {});

// (2x^2+y^2)^lambda (x^2+y^2); constant along rotated-center orbits at theta = 0.
std::function<double(const EvalPoint&)> conserved_quantity_rotated(double lambda);

struct StabilityReport {
  int n = 0;
  std::vector<EvalPoint> starts;
  std::vector<TrajectoryVerdict> verdicts;  // input order
  std::map<TrajectoryVerdict, int> counts;
};

// Integrates from n_initial points on the unit sphere (equispaced angles in
// the plane, seeded Gaussian directions otherwise) and tallies the verdicts.
StabilityReport empirical_stability(const VectorField& f, int n_initial,
                                    const IntegrationOptions& opts = {},
                                    uint64_t seed = 20240901,
                                    int max_threads = 0);

}  // namespace lyapcert
