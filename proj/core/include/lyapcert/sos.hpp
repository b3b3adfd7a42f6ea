#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lyapcert/poly.hpp"
#include "lyapcert/sdp.hpp"

namespace lyapcert {

// All monomials of exactly the given total degree, in canonical graded-lex
// order (x1^d first). Count is C(nvars+degree-1, degree).
std::vector<Monomial> monomial_basis(int nvars, int degree);

// PSD Gram matrix over a half-degree monomial basis witnessing an sos
// decomposition: b(x)' * gram * b(x) reproduces the certified form.
struct GramCertificate {
  std::vector<Monomial> basis;
  Eigen::MatrixXd gram;
  double min_eig = 0;
};

struct SosOptions {
  double recon_tol = 1e-6;  // per-coefficient reconstruction residual bound
  SolverOptions solver;     // feas_tol / infeas_tol / eig_tol live here
};

enum class SosStatus { sos, not_sos, inconclusive };

std::string to_string(SosStatus s);

struct SosVerdict {
  SosStatus status = SosStatus::inconclusive;
  std::optional<GramCertificate> certificate;
  double margin = 0;  // optimal value of the Gram margin program
  std::string note;
};

// Casts "is this form a sum of squares" as a margin SDP over the half-degree
// Gram basis. Requires a homogeneous form of even degree. A feasible Gram
// matrix is validated by exact reconstruction before the sos verdict is
// returned; a validation failure downgrades to inconclusive.
SosVerdict check_sos(const Polynomial& form, const SosOptions& opts = {});

// check_sos on form - eps*||x||^deg with eps = eps_rel * (largest absolute
// coefficient of the form). A certificate proves the form positive definite;
// failure is not a disproof (sufficient condition only).
SosVerdict check_positive_definite(const Polynomial& form, double eps_rel = 1e-6,
                                   const SosOptions& opts = {});

// ---- parameterized families ----------------------------------------------

// Coefficient affine in a vector of unknowns: constant + sum_k linear[k] u_k.
struct AffineCoeff {
  Rational constant = 0;
  std::map<int, Rational> linear;

  bool is_zero() const { return constant == 0 && linear.empty(); }
  AffineCoeff& operator+=(const AffineCoeff& o);
  AffineCoeff operator*(const Rational& c) const;
};

// Polynomial in x whose coefficients are affine functions of unknowns u.
// Closed under sums, derivatives, and products with fixed polynomials, which
// covers everything a Lyapunov search needs.
class AffinePolynomial {
 public:
  using TermMap = std::map<Monomial, AffineCoeff, MonomialOrder>;

  AffinePolynomial(int nvars, int nunknowns);

  static AffinePolynomial from_fixed(const Polynomial& p, int nunknowns);

  int nvars() const { return nvars_; }
  int nunknowns() const { return nunknowns_; }
  const TermMap& terms() const { return terms_; }

  void add_term(const Monomial& m, const AffineCoeff& c);

  AffinePolynomial operator-() const;
  AffinePolynomial& operator+=(const AffinePolynomial& q);
  friend AffinePolynomial operator+(AffinePolynomial p, const AffinePolynomial& q) {
    return p += q;
  }
  friend AffinePolynomial operator-(AffinePolynomial p, const AffinePolynomial& q) {
    return p += -q;
  }
  friend AffinePolynomial operator*(const Polynomial& p, const AffinePolynomial& q);

  AffinePolynomial differentiate(int var) const;

  // degree of the monomial support; homogeneous = all stored terms share it
  Polynomial::DegreeInfo degree_info() const;

  Polynomial substitute(const Eigen::VectorXd& u) const;  // doubles enter exactly
  Polynomial substitute_exact(std::span<const Rational> u) const;

 private:
  int nvars_;
  int nunknowns_;
  TermMap terms_;
};

AffinePolynomial grad_inner(const AffinePolynomial& p, const Polynomial& q);

// A linear family of forms: base(u; x), affine in unknown_count unknowns.
struct ParamFamily {
  int nvars = 0;
  int unknown_count = 0;
  AffinePolynomial base{1, 0};
};

// All forms of the given degree, one unknown per monomial.
ParamFamily full_form_family(int nvars, int degree);

enum class FamilyStatus { found, infeasible, inconclusive };

struct FamilyResult {
  FamilyStatus status = FamilyStatus::inconclusive;
  Eigen::VectorXd coefficients;          // unknowns, when found
  std::vector<Polynomial> forms;         // the concrete constraint forms
  std::vector<GramCertificate> certificates;  // one per constraint, validated
  double margin = 0;
  std::string note;
};

// Searches the family for unknowns making every constraint form sos, through
// one joint SDP with block-diagonal Gram blocks and the unknowns as free
// scalar variables. The first Gram block's trace is pinned to its basis size
// whenever unknowns are present, removing the scaling degeneracy of conic
// candidate sets. Every certificate is validated by exact reconstruction.
FamilyResult find_in_family(const ParamFamily& family,
                            const std::vector<AffinePolynomial>& sos_constraints,
                            const SosOptions& opts = {});

struct CertValidation {
  enum class Reason { valid, basis_mismatch, reconstruction_mismatch, gram_not_psd };
  bool ok = false;
  Reason reason = Reason::valid;
  double max_residual = 0;
  double min_eig = 0;
  explicit operator bool() const { return ok; }
};

// Exact reconstruction of the form from the (rationalized) Gram entries,
// compared coefficient by coefficient within recon_tol, plus a PSD check of
// the Gram matrix. Never throws; failures carry a reason code.
CertValidation validate_certificate(const Polynomial& form, const GramCertificate& cert,
                                    double recon_tol = 1e-6, double feas_tol = 1e-7);

}  // namespace lyapcert
