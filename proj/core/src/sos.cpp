#include "lyapcert/sos.hpp"

#include <numeric>
#include <stdexcept>

namespace lyapcert {

namespace {

void enumerate_exponents(int nvars, int degree, std::vector<int>& prefix,
                         std::vector<Monomial>& out) {
  if (static_cast<int>(prefix.size()) == nvars - 1) {
    std::vector<int> e = prefix;
    e.push_back(degree - std::accumulate(prefix.begin(), prefix.end(), 0));
    out.push_back(Monomial{std::move(e)});
    return;
  }
  int used = std::accumulate(prefix.begin(), prefix.end(), 0);
  for (int e = degree - used; e >= 0; --e) {
    prefix.push_back(e);
    enumerate_exponents(nvars, degree, prefix, out);
    prefix.pop_back();
  }
}

Monomial monomial_sum(const Monomial& a, const Monomial& b) {
  Monomial m = a;
  for (size_t i = 0; i < m.exps.size(); ++i) m.exps[i] += b.exps[i];
  return m;
}

// Gram equality rows for one sos constraint block: for every product
// monomial mu, <A_mu, Q> must equal the form's mu-coefficient, where
// <A_mu, Q> collects Q_ii (mu = 2 B_i) and 2 Q_ij (mu = B_i + B_j).
struct GramBlock {
  std::vector<Monomial> basis;
  std::map<Monomial, std::vector<std::pair<int, int>>, MonomialOrder> products;
};

GramBlock make_gram_block(int nvars, int half_degree) {
  GramBlock blk;
  blk.basis = monomial_basis(nvars, half_degree);
  const int n = static_cast<int>(blk.basis.size());
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      blk.products[monomial_sum(blk.basis[i], blk.basis[j])].emplace_back(i, j);
  return blk;
}

int checked_even_form_degree(const Polynomial::DegreeInfo& info, const char* what) {
  if (!info.zero && !info.homogeneous)
    throw std::invalid_argument(std::string(what) + ": input is not homogeneous");
  if (info.degree % 2 != 0)
    throw std::invalid_argument(std::string(what) + ": input has odd degree");
  return info.degree;
}

}  // namespace

std::vector<Monomial> monomial_basis(int nvars, int degree) {
  if (nvars < 1) throw std::invalid_argument("nvars must be positive");
  if (degree < 0) throw std::invalid_argument("degree must be nonnegative");
  std::vector<Monomial> out;
  if (nvars == 1) {
    out.push_back(Monomial{{degree}});
    return out;
  }
  std::vector<int> prefix;
  enumerate_exponents(nvars, degree, prefix, out);
  return out;
}

std::string to_string(SosStatus s) {
  switch (s) {
    case SosStatus::sos: return "sos";
    case SosStatus::not_sos: return "not_sos";
    default: return "inconclusive";
  }
}

SosVerdict check_sos(const Polynomial& form, const SosOptions& opts) {
  const int deg = checked_even_form_degree(form.degree_info(), "check_sos");
  GramBlock blk = make_gram_block(form.nvars(), deg / 2);
  const int n = static_cast<int>(blk.basis.size());

  SdpProblem prob;
  prob.dim = n;
  for (const auto& [mu, pairs] : blk.products) {
    SdpConstraint con;
    con.a = Eigen::MatrixXd::Zero(n, n);
    for (auto [i, j] : pairs) {
      if (i == j)
        con.a(i, i) = 1;
      else
        con.a(i, j) = con.a(j, i) = 1;
    }
    con.b = to_double(form.coeff(mu));
    prob.constraints.push_back(std::move(con));
  }

  SdpResult res = solve_margin(prob, opts.solver);
  SosVerdict verdict;
  verdict.margin = res.margin;
  verdict.note = res.note;
  switch (res.status) {
    case SdpStatus::feasible: {
      GramCertificate cert{blk.basis, *res.witness, min_eigenvalue(*res.witness)};
      auto val = validate_certificate(form, cert, opts.recon_tol, opts.solver.feas_tol);
      if (val) {
        verdict.status = SosStatus::sos;
        verdict.certificate = std::move(cert);
      } else {
        verdict.status = SosStatus::inconclusive;
        verdict.note = "certificate failed validation (residual " +
                       std::to_string(val.max_residual) + ")";
      }
      break;
    }
    case SdpStatus::infeasible:
      verdict.status = SosStatus::not_sos;
      break;
    case SdpStatus::numerical_failure:
      verdict.status = SosStatus::inconclusive;
      break;
  }
  return verdict;
}

SosVerdict check_positive_definite(const Polynomial& form, double eps_rel,
                                   const SosOptions& opts) {
  if (eps_rel <= 0) throw std::invalid_argument("eps must be positive");
  const int deg = checked_even_form_degree(form.degree_info(), "check_positive_definite");
  Rational eps = rational_from_double(eps_rel) * form.max_abs_coeff();
  if (eps == 0) eps = rational_from_double(eps_rel);  // zero form: absolute floor
  Polynomial target = form - eps * pow(norm_squared(form.nvars()), deg / 2);
  return check_sos(target, opts);
}

// ---- affine machinery ------------------------------------------------------

AffineCoeff& AffineCoeff::operator+=(const AffineCoeff& o) {
  constant += o.constant;
  for (const auto& [k, v] : o.linear) {
    auto [it, inserted] = linear.emplace(k, v);
    if (!inserted) {
      it->second += v;
      if (it->second == 0) linear.erase(it);
    }
  }
  return *this;
}

AffineCoeff AffineCoeff::operator*(const Rational& c) const {
  AffineCoeff r;
  if (c == 0) return r;
  r.constant = constant * c;
  for (const auto& [k, v] : linear) r.linear.emplace(k, v * c);
  return r;
}

AffinePolynomial::AffinePolynomial(int nvars, int nunknowns)
    : nvars_(nvars), nunknowns_(nunknowns) {
  if (nvars < 1) throw std::invalid_argument("affine polynomial needs at least one variable");
  if (nunknowns < 0) throw std::invalid_argument("negative unknown count");
}

AffinePolynomial AffinePolynomial::from_fixed(const Polynomial& p, int nunknowns) {
  AffinePolynomial r(p.nvars(), nunknowns);
  for (const auto& [m, c] : p.terms()) r.terms_.emplace(m, AffineCoeff{c, {}});
  return r;
}

void AffinePolynomial::add_term(const Monomial& m, const AffineCoeff& c) {
  if (static_cast<int>(m.exps.size()) != nvars_)
    throw std::invalid_argument("monomial length != nvars");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

AffinePolynomial AffinePolynomial::operator-() const {
  AffinePolynomial r(nvars_, nunknowns_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * Rational(-1));
  return r;
}

AffinePolynomial& AffinePolynomial::operator+=(const AffinePolynomial& q) {
  if (q.nvars_ != nvars_ || q.nunknowns_ != nunknowns_)
    throw std::invalid_argument("affine polynomial shape mismatch");
  for (const auto& [m, c] : q.terms_) add_term(m, c);
  return *this;
}

AffinePolynomial operator*(const Polynomial& p, const AffinePolynomial& q) {
  if (p.nvars() != q.nvars_) throw std::invalid_argument("dimension mismatch");
  AffinePolynomial r(q.nvars_, q.nunknowns_);
  for (const auto& [mp, cp] : p.terms()) {
    for (const auto& [mq, cq] : q.terms_) {
      Monomial m = mq;
      for (int i = 0; i < r.nvars_; ++i) m.exps[i] += mp.exps[i];
      r.add_term(m, cq * cp);
    }
  }
  return r;
}

AffinePolynomial AffinePolynomial::differentiate(int var) const {
  if (var < 0 || var >= nvars_) throw std::invalid_argument("variable index out of range");
  AffinePolynomial r(nvars_, nunknowns_);
  for (const auto& [m, c] : terms_) {
    if (m.exps[var] == 0) continue;
    Monomial d = m;
    d.exps[var] -= 1;
    r.add_term(d, c * Rational(m.exps[var]));
  }
  return r;
}

Polynomial::DegreeInfo AffinePolynomial::degree_info() const {
  if (terms_.empty()) return {0, true, true};
  int maxdeg = 0, mindeg = -1;
  for (const auto& [m, c] : terms_) {
    int d = m.degree();
    maxdeg = std::max(maxdeg, d);
    mindeg = mindeg < 0 ? d : std::min(mindeg, d);
  }
  return {maxdeg, mindeg == maxdeg, false};
}

Polynomial AffinePolynomial::substitute(const Eigen::VectorXd& u) const {
  if (static_cast<int>(u.size()) != nunknowns_)
    throw std::invalid_argument("unknown vector has wrong length");
  std::vector<Rational> exact(u.size());
  for (int i = 0; i < u.size(); ++i) exact[i] = rational_from_double(u[i]);
  return substitute_exact(exact);
}

Polynomial AffinePolynomial::substitute_exact(std::span<const Rational> u) const {
  if (static_cast<int>(u.size()) != nunknowns_)
    throw std::invalid_argument("unknown vector has wrong length");
  Polynomial p(nvars_);
  for (const auto& [m, c] : terms_) {
    Rational v = c.constant;
    for (const auto& [k, w] : c.linear) v += w * u[k];
    p.add_term(m, v);
  }
  return p;
}

AffinePolynomial grad_inner(const AffinePolynomial& p, const Polynomial& q) {
  if (p.nvars() != q.nvars()) throw std::invalid_argument("dimension mismatch in grad_inner");
  AffinePolynomial r(p.nvars(), p.nunknowns());
  for (int i = 0; i < p.nvars(); ++i) r += q.differentiate(i) * p.differentiate(i);
  return r;
}

ParamFamily full_form_family(int nvars, int degree) {
  ParamFamily fam;
  fam.nvars = nvars;
  auto basis = monomial_basis(nvars, degree);
  fam.unknown_count = static_cast<int>(basis.size());
  fam.base = AffinePolynomial(nvars, fam.unknown_count);
  for (int k = 0; k < fam.unknown_count; ++k)
    fam.base.add_term(basis[k], AffineCoeff{0, {{k, 1}}});
  return fam;
}

FamilyResult find_in_family(const ParamFamily& family,
                            const std::vector<AffinePolynomial>& sos_constraints,
                            const SosOptions& opts) {
  if (sos_constraints.empty()) throw std::invalid_argument("no sos constraints given");
  const int nvars = family.nvars;
  const int nunk = family.unknown_count;

  // one Gram block per constraint
  std::vector<GramBlock> blocks;
  std::vector<int> offsets;
  int total_dim = 0;
  for (const auto& c : sos_constraints) {
    if (c.nvars() != nvars || c.nunknowns() != nunk)
      throw std::invalid_argument("constraint shape does not match the family");
    int deg = checked_even_form_degree(c.degree_info(), "find_in_family");
    blocks.push_back(make_gram_block(nvars, deg / 2));
    offsets.push_back(total_dim);
    total_dim += static_cast<int>(blocks.back().basis.size());
  }

  SdpProblem prob;
  prob.dim = total_dim;
  prob.free_count = nunk;
  for (size_t j = 0; j < blocks.size(); ++j) {
    const int off = offsets[j];
    for (const auto& [mu, pairs] : blocks[j].products) {
      SdpConstraint con;
      con.a = Eigen::MatrixXd::Zero(total_dim, total_dim);
      for (auto [r, c] : pairs) {
        if (r == c)
          con.a(off + r, off + r) = 1;
        else
          con.a(off + r, off + c) = con.a(off + c, off + r) = 1;
      }
      con.free_coeffs = Eigen::VectorXd::Zero(nunk);
      // <A_mu, Q_j> - L_mu(u) = c0_mu
      auto it = sos_constraints[j].terms().find(mu);
      if (it != sos_constraints[j].terms().end()) {
        con.b = to_double(it->second.constant);
        for (const auto& [k, w] : it->second.linear) con.free_coeffs[k] = -to_double(w);
      }
      prob.constraints.push_back(std::move(con));
    }
  }
  if (nunk > 0) {
    // pin trace of the first Gram block to its basis size
    SdpConstraint tr;
    tr.a = Eigen::MatrixXd::Zero(total_dim, total_dim);
    const int n0 = static_cast<int>(blocks[0].basis.size());
    tr.a.topLeftCorner(n0, n0) = Eigen::MatrixXd::Identity(n0, n0);
    tr.free_coeffs = Eigen::VectorXd::Zero(nunk);
    tr.b = n0;
    prob.constraints.push_back(std::move(tr));
  }

  SdpResult res = solve_margin(prob, opts.solver);
  FamilyResult out;
  out.margin = res.margin;
  out.note = res.note;

  switch (res.status) {
    case SdpStatus::infeasible:
      out.status = FamilyStatus::infeasible;
      return out;
    case SdpStatus::numerical_failure:
      out.status = FamilyStatus::inconclusive;
      return out;
    case SdpStatus::feasible:
      break;
  }

  out.coefficients = res.free_values.size() ? res.free_values : Eigen::VectorXd::Zero(0);
  for (size_t j = 0; j < blocks.size(); ++j) {
    const int off = offsets[j];
    const int n = static_cast<int>(blocks[j].basis.size());
    Polynomial form = sos_constraints[j].substitute(out.coefficients);
    Eigen::MatrixXd gram = res.witness->block(off, off, n, n);
    GramCertificate cert{blocks[j].basis, gram, min_eigenvalue(gram)};
    auto val = validate_certificate(form, cert, opts.recon_tol, opts.solver.feas_tol);
    if (!val) {
      out.status = FamilyStatus::inconclusive;
      out.note = "constraint " + std::to_string(j) + " certificate failed validation (residual " +
                 std::to_string(val.max_residual) + ", min eig " + std::to_string(val.min_eig) + ")";
      return out;
    }
    out.forms.push_back(std::move(form));
    out.certificates.push_back(std::move(cert));
  }
  out.status = FamilyStatus::found;
  return out;
}

CertValidation validate_certificate(const Polynomial& form, const GramCertificate& cert,
                                    double recon_tol, double feas_tol) {
  CertValidation v;
  const int n = static_cast<int>(cert.basis.size());
  if (cert.gram.rows() != n || cert.gram.cols() != n) {
    v.reason = CertValidation::Reason::basis_mismatch;
    return v;
  }
  auto info = form.degree_info();
  for (const auto& m : cert.basis) {
    if (static_cast<int>(m.exps.size()) != form.nvars() ||
        (!info.zero && 2 * m.degree() != info.degree)) {
      v.reason = CertValidation::Reason::basis_mismatch;
      return v;
    }
  }

  // exact reconstruction from rationalized Gram entries
  Polynomial recon = Polynomial::zero(form.nvars());
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Rational g = rational_from_double(0.5 * (cert.gram(i, j) + cert.gram(j, i)));
      if (g == 0) continue;
      Monomial mu = cert.basis[i];
      for (size_t k = 0; k < mu.exps.size(); ++k) mu.exps[k] += cert.basis[j].exps[k];
      recon.add_term(mu, i == j ? g : 2 * g);
    }
  }
  Polynomial diff = recon - form;
  Rational max_resid = diff.max_abs_coeff();
  v.max_residual = to_double(max_resid);
  v.min_eig = min_eigenvalue(cert.gram);
  if (max_resid > rational_from_double(recon_tol)) {
    v.reason = CertValidation::Reason::reconstruction_mismatch;
    return v;
  }
  if (v.min_eig < -feas_tol) {
    v.reason = CertValidation::Reason::gram_not_psd;
    return v;
  }
  v.ok = true;
  return v;
}

}  // namespace lyapcert
