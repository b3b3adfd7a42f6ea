#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lyapcert/dynamics.hpp"
#include "lyapcert/poly.hpp"
#include "lyapcert/sos.hpp"

namespace lyapcert {

// Signed variable permutation x_i -> signs[i] * x_{perm[i]}, generating a
// cyclic group of the given order.
struct SymmetrySpec {
  std::vector<int> perm;
  std::vector<int> signs;  // +1 / -1
  int order = 1;
};

// The quarter-turn map (x, y) -> (y, -x), order 4.
SymmetrySpec quarter_turn_2d();

// V composed with the generator. Throws if the spec is malformed or
// generator^order is not the identity.
Polynomial apply_generator(const Polynomial& v, const SymmetrySpec& sym);

// Group average (1/order) sum_k V(g^k x); invariant forms are fixed points.
Polynomial symmetrize(const Polynomial& v, const SymmetrySpec& sym);

// Vdot along the field: sum_i (dV/dx_i) f_i, exact. For homogeneous V of
// degree d and f of degree k the result is a form of degree d+k-1.
Polynomial lie_derivative(const Polynomial& v, const VectorField& f);
AffinePolynomial lie_derivative(const AffinePolynomial& v, const VectorField& f);

// All forms of the given degree invariant under the group generated by sym,
// parameterized by one unknown per nonvanishing monomial orbit.
ParamFamily symmetric_form_family(int nvars, int degree, const SymmetrySpec& sym);

enum class LyapStatus { found, infeasible_at_degree, inconclusive };

std::string to_string(LyapStatus s);

struct LyapunovOutcome {
  LyapStatus status = LyapStatus::inconclusive;
  std::optional<Polynomial> V;
  std::optional<GramCertificate> cert_V;     // certifies V - eps_v ||x||^d
  std::optional<GramCertificate> cert_Vdot;  // certifies -Vdot - eps_vdot ||x||^(d+k-1)
  double eps_v = 0;
  double eps_vdot = 0;
  double margin = 0;
  std::string note;
};

// Searches the forms of the given even degree (restricted to the invariant
// subspace when sym is given) for V with both strict-margin sos constraints.
// infeasible_at_degree is asserted only for bivariate fields, where sos
// infeasibility implies non-existence; in three or more variables the same
// SDP infeasibility is reported as inconclusive.
LyapunovOutcome find_lyapunov(const VectorField& f, int degree, double eps_rel = 1e-6,
                              const std::optional<SymmetrySpec>& sym = std::nullopt,
                              const SosOptions& opts = {});

struct GradientPositivityOutcome {
  FamilyStatus status = FamilyStatus::inconclusive;
  std::optional<Polynomial> W;
  std::optional<GramCertificate> cert_W;      // certifies W - eps_w ||x||^wdeg
  std::optional<GramCertificate> cert_inner;  // certifies <grad W, grad V> - eps_g ||x||^(...)
  double eps_w = 0;
  double eps_inner = 0;
  double margin = 0;
  std::string note;
};

// Gradient-method positivity proof: a positive definite W with
// <grad W, grad V> positive definite proves V positive definite. Both
// conditions are imposed as eps-margin sos constraints on a form family of
// degree w_degree.
GradientPositivityOutcome certify_positivity_gradient(const Polynomial& V, int w_degree,
                                                      double eps_rel = 1e-6,
                                                      const SosOptions& opts = {});

struct NumericReport {
  int samples = 0;
  double min_V = 0;
  double max_Vdot = 0;
  EvalPoint argmin_V;
  EvalPoint argmax_Vdot;
};

// Independent sampling cross-check on the unit sphere (sufficient by
// homogeneity): a valid pair shows min V > 0 and max Vdot < 0.
NumericReport verify_lyapunov_numeric(const Polynomial& V, const VectorField& f, int samples,
                                      uint64_t seed = 20240901);

// ---- feasibility-threshold sweep ------------------------------------------

struct SweepProbe {
  double theta = 0;
  LyapStatus status = LyapStatus::inconclusive;
};

struct SweepResult {
  std::vector<SweepProbe> probes;                      // evaluation order
  std::optional<std::pair<double, double>> bracket;    // enclosing the status flip
  LyapStatus lo_status = LyapStatus::inconclusive;
  LyapStatus hi_status = LyapStatus::inconclusive;
  bool halted_inconclusive = false;
  std::string note;
};

// Locates the feasibility boundary of find_lyapunov over theta by a coarse
// scan (parallelizable) followed by bisection down to the given resolution.
// An inconclusive probe halts the bisection with a diagnostic.
SweepResult theta_sweep(const std::function<VectorField(double)>& field_at_theta, int degree,
                        double lo, double hi, double resolution, double eps_rel = 1e-6,
                        const std::optional<SymmetrySpec>& sym = std::nullopt,
                        const SosOptions& opts = {}, int coarse_points = 14,
                        int max_threads = 0);

}  // namespace lyapcert
