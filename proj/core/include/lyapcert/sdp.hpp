#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lyapcert {

// Small dense semidefinite feasibility, decided through the margin program
//   maximize t  s.t.  X >= t I,  <A_k, X> + c_k' u = b_k
// whose sign determines strict feasibility. The free scalar variables u are
// optional; plain problems leave free_count at zero.

struct SdpConstraint {
  Eigen::MatrixXd a;            // symmetric, side = problem dim
  Eigen::VectorXd free_coeffs;  // length = free_count (may be empty)
  double b = 0;
};

struct SdpProblem {
  int dim = 0;
  int free_count = 0;
  std::vector<SdpConstraint> constraints;
};

struct SolverOptions {
  double feas_tol = 1e-7;    // margin >= -feas_tol counts as feasible
  double infeas_tol = 1e-6;  // margin < -infeas_tol counts as infeasible
  double eig_tol = 1e-9;
  int max_iterations = 200;
  double margin_cap = 1e3;   // keeps the margin program bounded
  int verbosity = 0;
  std::ostream* trace = nullptr;  // JSON lines of iterates when verbosity > 0
};

enum class SdpStatus { feasible, infeasible, numerical_failure };

std::string to_string(SdpStatus s);

struct SdpResult {
  SdpStatus status = SdpStatus::numerical_failure;
  std::optional<Eigen::MatrixXd> witness;  // present when feasible
  Eigen::VectorXd free_values;             // length free_count
  double margin = 0;                       // optimal t of the margin program
  int iterations = 0;
  std::string note;
};

// Normalizes the constraint rows, drops dependent rows (warning via trace),
// reduces to an LMI over the affine solution set, and runs a Nesterov-Todd
// primal-dual interior-point iteration. Margins inside
// [-infeas_tol, -feas_tol) are reported as numerical_failure, never as a
// verdict. Throws std::invalid_argument on malformed or inconsistent input.
SdpResult solve_margin(const SdpProblem& prob, const SolverOptions& opts = {});

// Smallest eigenvalue of a symmetric matrix; throws if the symmetry defect
// exceeds sym_tol relative to the matrix scale.
double min_eigenvalue(const Eigen::MatrixXd& m, double sym_tol = 1e-8);

}  // namespace lyapcert
