#include "lyapcert/sdp.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace lyapcert {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// svec with sqrt(2)-scaled off-diagonals, so <A,B> = svec(A).svec(B).
Eigen::VectorXd svec(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  Eigen::VectorXd v(n * (n + 1) / 2);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    v[k++] = m(i, i);
    for (int j = i + 1; j < n; ++j) v[k++] = kSqrt2 * m(i, j);
  }
  return v;
}

Eigen::MatrixXd smat(const Eigen::VectorXd& v, int n) {
  Eigen::MatrixXd m(n, n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    m(i, i) = v[k++];
    for (int j = i + 1; j < n; ++j) {
      m(i, j) = m(j, i) = v[k++] / kSqrt2;
    }
  }
  return m;
}

double inner(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a.array() * b.array()).sum();
}

struct LmiData {
  // max b.y  s.t.  C - sum_i y_i A_i >= 0, with t the last variable.
  std::vector<Eigen::MatrixXd> a;
  Eigen::MatrixXd c;
  Eigen::VectorXd b;
  int n = 0;  // LMI side = problem dim + 1 (margin-cap slot)
};

struct IpmOutcome {
  bool converged = false;
  Eigen::VectorXd y;
  double objective = 0;
  int iterations = 0;
  std::string note;
};

IpmOutcome run_nt_ipm(const LmiData& lmi, const SolverOptions& opts) {
  const int n = lmi.n;
  const int m = static_cast<int>(lmi.a.size());
  const double tol = 1e-9;          // full-precision acceptance
  const double fallback_tol = 3e-8;  // best-iterate acceptance on breakdown

  IpmOutcome out;
  out.y = Eigen::VectorXd::Zero(m);

  double data_scale = lmi.c.norm();
  for (const auto& a : lmi.a) data_scale = std::max(data_scale, a.norm());
  data_scale = std::max(1.0, data_scale);

  Eigen::MatrixXd x = Eigen::MatrixXd::Identity(n, n) * std::max(1.0, 2.0 / n);
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(n, n) * data_scale;
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);

  double best_score = std::numeric_limits<double>::infinity();
  int best_iter = 0;

  std::vector<Eigen::MatrixXd> waw(m);
  Eigen::MatrixXd big(m, m);

  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    out.iterations = iter + 1;

    // residuals
    Eigen::VectorXd rp(m);
    for (int i = 0; i < m; ++i) rp[i] = lmi.b[i] - inner(lmi.a[i], x);
    Eigen::MatrixXd rd = lmi.c - s;
    for (int i = 0; i < m; ++i) rd -= y[i] * lmi.a[i];

    const double gap = inner(x, s);
    const double mu = gap / n;
    const double obj_d = lmi.b.dot(y);
    const double obj_p = inner(lmi.c, x);
    const double score =
        std::max({rp.lpNorm<Eigen::Infinity>() / (1 + lmi.b.lpNorm<Eigen::Infinity>()),
                  rd.norm() / (1 + lmi.c.norm()),
                  gap / (1 + std::abs(obj_p) + std::abs(obj_d))});

    if (opts.verbosity > 0 && opts.trace) {
      *opts.trace << "{\"iter\":" << iter << ",\"mu\":" << mu << ",\"score\":" << score
                  << ",\"t\":" << obj_d << "}\n";
    }

    if (score < best_score) {
      best_score = score;
      best_iter = iter;
      out.y = y;
      out.objective = obj_d;
    }
    if (score <= tol) {
      out.converged = true;
      return out;
    }
    if (iter - best_iter > 15) {
      out.note = "stagnation at the numerical floor";
      break;
    }

    // Nesterov-Todd scaling point: w s w = x
    Eigen::LLT<Eigen::MatrixXd> lltx(x);
    if (lltx.info() != Eigen::Success) {
      out.note = "lost positive definiteness of x";
      break;
    }
    Eigen::MatrixXd lx = lltx.matrixL();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lx.transpose() * s * lx);
    if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0) {
      out.note = "nt scaling breakdown";
      break;
    }
    Eigen::VectorXd lam_isqrt = es.eigenvalues().array().rsqrt();
    Eigen::MatrixXd u = es.eigenvectors();
    Eigen::MatrixXd w = lx * u * lam_isqrt.asDiagonal() * u.transpose() * lx.transpose();
    w = 0.5 * (w + w.transpose());

    Eigen::MatrixXd x_inv = lltx.solve(Eigen::MatrixXd::Identity(n, n));
    x_inv = 0.5 * (x_inv + x_inv.transpose());

    // Schur complement: big(i,j) = <A_i, W A_j W>
    for (int j = 0; j < m; ++j) {
      waw[j] = w * lmi.a[j] * w;
      waw[j] = 0.5 * (waw[j] + waw[j].transpose());
    }
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) big(i, j) = big(j, i) = inner(lmi.a[i], waw[j]);

    Eigen::LLT<Eigen::MatrixXd> lbig(big);
    if (lbig.info() != Eigen::Success) {
      big += (1e-13 * (1 + big.trace() / m)) * Eigen::MatrixXd::Identity(m, m);
      lbig.compute(big);
      if (lbig.info() != Eigen::Success) {
        out.note = "singular schur complement";
        break;
      }
    }

    auto solve_direction = [&](const Eigen::MatrixXd& rc, Eigen::VectorXd& dy,
                               Eigen::MatrixXd& dx, Eigen::MatrixXd& ds) {
      Eigen::MatrixXd base = w * (rc - rd) * w;
      Eigen::VectorXd rhs(m);
      for (int i = 0; i < m; ++i) rhs[i] = rp[i] - inner(lmi.a[i], base);
      dy = lbig.solve(rhs);
      dy += lbig.solve(rhs - big * dy);  // one round of iterative refinement
      ds = rd;
      dx = base;
      for (int j = 0; j < m; ++j) {
        ds -= dy[j] * lmi.a[j];
        dx += dy[j] * waw[j];
      }
      dx = 0.5 * (dx + dx.transpose());
    };

    auto max_step = [&](const Eigen::MatrixXd& pos, const Eigen::MatrixXd& dir) {
      Eigen::LLT<Eigen::MatrixXd> llt(pos);
      Eigen::MatrixXd l = llt.matrixL();
      Eigen::MatrixXd g = l.triangularView<Eigen::Lower>().solve(dir);
      g = l.triangularView<Eigen::Lower>().solve(g.transpose()).eval();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> e(0.5 * (g + g.transpose()),
                                                       Eigen::EigenvaluesOnly);
      double lmin = e.eigenvalues().minCoeff();
      return lmin >= -1e-14 ? 1.0 : std::min(1.0, -0.98 / lmin);
    };

    // predictor
    Eigen::VectorXd dy;
    Eigen::MatrixXd dx, ds;
    solve_direction(-s, dy, dx, ds);
    double ap = max_step(x, dx);
    double ad = max_step(s, ds);
    double mu_aff = inner(x + ap * dx, s + ad * ds) / n;
    double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 1e-10, 1.0);

    // centering corrector (reuses the Schur factorization)
    solve_direction(sigma * mu * x_inv - s, dy, dx, ds);
    ap = max_step(x, dx);
    ad = max_step(s, ds);
    if (ap < 1e-12 && ad < 1e-12) {
      out.note = "step length collapsed";
      break;
    }

    x += ap * dx;
    s += ad * ds;
    y += ad * dy;

    if (!x.allFinite() || !s.allFinite() || !y.allFinite()) {
      out.note = "non-finite iterate";
      break;
    }
  }

  if (out.note.empty()) out.note = "iteration limit exceeded";
  if (best_score <= fallback_tol) {
    out.converged = true;
    out.note += " (accepted best iterate, score " + std::to_string(best_score) + ")";
  }
  return out;
}

}  // namespace

std::string to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::feasible: return "feasible";
    case SdpStatus::infeasible: return "infeasible";
    default: return "numerical_failure";
  }
}

double min_eigenvalue(const Eigen::MatrixXd& m, double sym_tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix not square");
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > sym_tol * scale)
    throw std::invalid_argument("matrix not symmetric within tolerance");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()),
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

SdpResult solve_margin(const SdpProblem& prob, const SolverOptions& opts) {
  const int dim = prob.dim;
  const int nfree = prob.free_count;
  if (dim < 1) throw std::invalid_argument("sdp dimension must be positive");
  if (prob.constraints.empty()) throw std::invalid_argument("constraint list is empty");

  const int svec_len = dim * (dim + 1) / 2;
  const int ncols = svec_len + nfree;
  const int nrows = static_cast<int>(prob.constraints.size());

  // Row matrix of the equality system over (svec(X), u), rows normalized.
  Eigen::MatrixXd rows(nrows, ncols);
  Eigen::VectorXd rhs(nrows);
  for (int k = 0; k < nrows; ++k) {
    const auto& con = prob.constraints[k];
    if (con.a.rows() != dim || con.a.cols() != dim)
      throw std::invalid_argument("constraint matrix has wrong dimensions");
    if (static_cast<int>(con.free_coeffs.size()) != nfree)
      throw std::invalid_argument("constraint free-variable vector has wrong length");
    double scale = std::max(1.0, con.a.cwiseAbs().maxCoeff());
    if ((con.a - con.a.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale)
      throw std::invalid_argument("constraint matrix not symmetric");
    Eigen::MatrixXd sym = 0.5 * (con.a + con.a.transpose());
    rows.row(k).head(svec_len) = svec(sym);
    if (nfree > 0) rows.row(k).tail(nfree) = con.free_coeffs;
    double norm = rows.row(k).norm();
    if (norm < 1e-300) norm = 1;  // zero row: kept, consistency-checked below
    rows.row(k) /= norm;
    rhs[k] = con.b / norm;
  }

  // Rank filtering + affine parameterization of the solution set.
  Eigen::BDCSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeFullV | Eigen::ComputeThinU);
  double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0;
  double rank_tol = std::max(nrows, ncols) * 1e-13 * std::max(smax, 1.0);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > rank_tol) ++rank;

  Eigen::VectorXd z0 = Eigen::VectorXd::Zero(ncols);
  {
    Eigen::VectorXd ut_b = svd.matrixU().transpose() * rhs;
    for (int i = 0; i < rank; ++i)
      z0 += (ut_b[i] / svd.singularValues()[i]) * svd.matrixV().col(i);
  }
  double residual = (rows * z0 - rhs).lpNorm<Eigen::Infinity>();
  if (residual > 1e-8 * (1 + rhs.lpNorm<Eigen::Infinity>()))
    throw std::invalid_argument("inconsistent equality constraints (residual " +
                                std::to_string(residual) + ")");
  if (rank < nrows && opts.verbosity > 0 && opts.trace)
    *opts.trace << "{\"warning\":\"dropped " << (nrows - rank)
                << " dependent constraint row(s)\"}\n";

  const int null_dim = ncols - rank;
  Eigen::MatrixXd null_basis = svd.matrixV().rightCols(null_dim);

  SdpResult result;
  auto finish = [&](double margin, const Eigen::VectorXd& z_full, bool solver_ok,
                    const std::string& note) {
    result.margin = margin;
    result.iterations = std::max(result.iterations, 0);
    result.note = note;
    Eigen::MatrixXd x_cand = smat(z_full.head(svec_len), dim);
    Eigen::VectorXd u_cand =
        nfree > 0 ? Eigen::VectorXd(z_full.tail(nfree)) : Eigen::VectorXd();

    // post-hoc verification outside the solver loop: the candidate lives on
    // the affine constraint set and its least eigenvalue is a certified
    // lower bound on the optimal margin, so a PSD-within-tolerance witness
    // settles feasibility even when the iteration stopped early.
    double max_res = 0;
    for (const auto& con : prob.constraints) {
      double v = inner(0.5 * (con.a + con.a.transpose()), x_cand);
      if (nfree > 0) v += con.free_coeffs.dot(u_cand);
      max_res = std::max(max_res, std::abs(v - con.b) / (1 + std::abs(con.b)));
    }
    double lmin = min_eigenvalue(x_cand);

    if (max_res <= opts.feas_tol && lmin >= -opts.feas_tol) {
      result.status = SdpStatus::feasible;
      result.margin = std::max(margin, lmin);
      result.witness = x_cand;
      result.free_values = u_cand;
    } else if (!solver_ok) {
      result.status = SdpStatus::numerical_failure;
    } else if (margin < -opts.infeas_tol) {
      result.status = SdpStatus::infeasible;
    } else {
      result.status = SdpStatus::numerical_failure;
      result.note = "margin " + std::to_string(margin) + " inside the undecided band";
    }
  };

  if (null_dim == 0) {
    // unique solution of the equality system: the margin is its least eigenvalue
    double margin = std::min(min_eigenvalue(smat(z0.head(svec_len), dim)), opts.margin_cap);
    finish(margin, z0, true, "unique-solution shortcut");
    return result;
  }

  // LMI over the affine set, with one extra diagonal slot enforcing t <= cap:
  //   blkdiag(X(z), cap) - t blkdiag(I, 1) >= 0,  maximize t.
  LmiData lmi;
  lmi.n = dim + 1;
  lmi.c = Eigen::MatrixXd::Zero(lmi.n, lmi.n);
  lmi.c.topLeftCorner(dim, dim) = smat(z0.head(svec_len), dim);
  lmi.c(dim, dim) = opts.margin_cap;
  lmi.b = Eigen::VectorXd::Zero(null_dim + 1);
  lmi.b[null_dim] = 1;
  lmi.a.reserve(null_dim + 1);
  for (int i = 0; i < null_dim; ++i) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(lmi.n, lmi.n);
    a.topLeftCorner(dim, dim) = -smat(null_basis.col(i).head(svec_len), dim);
    lmi.a.push_back(std::move(a));
  }
  {
    Eigen::MatrixXd a_t = Eigen::MatrixXd::Identity(lmi.n, lmi.n);
    lmi.a.push_back(std::move(a_t));
  }

  IpmOutcome ipm = run_nt_ipm(lmi, opts);
  result.iterations = ipm.iterations;
  Eigen::VectorXd z_full = z0 + null_basis * ipm.y.head(null_dim);
  finish(ipm.objective, z_full, ipm.converged, ipm.note);
  return result;
}

}  // namespace lyapcert
