#include "lyapcert/lyap.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "compiled_eval.hpp"
#include "lyapcert/parallel.hpp"

namespace lyapcert {

namespace {

void validate_spec(const SymmetrySpec& sym) {
  const int n = static_cast<int>(sym.perm.size());
  if (n == 0 || static_cast<int>(sym.signs.size()) != n)
    throw std::invalid_argument("symmetry spec shape mismatch");
  std::vector<bool> hit(n, false);
  for (int i = 0; i < n; ++i) {
    if (sym.perm[i] < 0 || sym.perm[i] >= n || hit[sym.perm[i]])
      throw std::invalid_argument("symmetry perm is not a permutation");
    hit[sym.perm[i]] = true;
    if (sym.signs[i] != 1 && sym.signs[i] != -1)
      throw std::invalid_argument("symmetry signs must be +1 or -1");
  }
  if (sym.order < 1) throw std::invalid_argument("symmetry order must be positive");
  // generator^order must be the identity
  std::vector<int> p(n), s(n, 1);
  for (int i = 0; i < n; ++i) p[i] = i;
  for (int k = 0; k < sym.order; ++k) {
    std::vector<int> np(n);
    std::vector<int> ns(n);
    for (int i = 0; i < n; ++i) {
      np[i] = p[sym.perm[i]];
      ns[i] = sym.signs[i] * s[sym.perm[i]];
    }
    p = np;
    s = ns;
  }
  for (int i = 0; i < n; ++i)
    if (p[i] != i || s[i] != 1)
      throw std::invalid_argument("generator^order is not the identity");
}

double field_coeff_scale(const VectorField& f) {
  Rational m = 0;
  for (const auto& c : f.components) {
    Rational a = c.max_abs_coeff();
    if (a > m) m = a;
  }
  return std::max(1.0, to_double(m));
}

}  // namespace

SymmetrySpec quarter_turn_2d() { return SymmetrySpec{{1, 0}, {1, -1}, 4}; }

Polynomial apply_generator(const Polynomial& v, const SymmetrySpec& sym) {
  validate_spec(sym);
  const int n = v.nvars();
  if (static_cast<int>(sym.perm.size()) != n)
    throw std::invalid_argument("symmetry dimension does not match the polynomial");
  Polynomial r(n);
  for (const auto& [m, c] : v.terms()) {
    // x_i -> signs[i] x_{perm[i]}
    std::vector<int> e(n, 0);
    int sign = 1;
    for (int i = 0; i < n; ++i) {
      e[sym.perm[i]] += m.exps[i];
      if (sym.signs[i] == -1 && (m.exps[i] & 1)) sign = -sign;
    }
    r.add_term(Monomial{std::move(e)}, sign == 1 ? c : Rational(-c));
  }
  return r;
}

Polynomial symmetrize(const Polynomial& v, const SymmetrySpec& sym) {
  Polynomial acc = v;
  Polynomial cur = v;
  for (int k = 1; k < sym.order; ++k) {
    cur = apply_generator(cur, sym);
    acc += cur;
  }
  return Rational(1, sym.order) * acc;
}

Polynomial lie_derivative(const Polynomial& v, const VectorField& f) {
  if (v.nvars() != f.nvars) throw std::invalid_argument("dimension mismatch in lie_derivative");
  Polynomial r = Polynomial::zero(v.nvars());
  for (int i = 0; i < f.nvars; ++i) r += v.differentiate(i) * f.components[i];
  return r;
}

AffinePolynomial lie_derivative(const AffinePolynomial& v, const VectorField& f) {
  if (v.nvars() != f.nvars) throw std::invalid_argument("dimension mismatch in lie_derivative");
  AffinePolynomial r(v.nvars(), v.nunknowns());
  for (int i = 0; i < f.nvars; ++i) r += f.components[i] * v.differentiate(i);
  return r;
}

ParamFamily symmetric_form_family(int nvars, int degree, const SymmetrySpec& sym) {
  validate_spec(sym);
  if (static_cast<int>(sym.perm.size()) != nvars)
    throw std::invalid_argument("symmetry dimension mismatch");

  // one representative per nonvanishing monomial orbit, sign-normalized
  std::vector<Polynomial> reps;
  for (const auto& m : monomial_basis(nvars, degree)) {
    Polynomial orbit = symmetrize(Polynomial::term(nvars, m.exps, 1), sym);
    if (orbit.is_zero()) continue;
    Rational lead = orbit.terms().begin()->second;
    orbit = Rational(1) / lead * orbit;
    bool known = false;
    for (const auto& r : reps)
      if (r == orbit) {
        known = true;
        break;
      }
    if (!known) reps.push_back(std::move(orbit));
  }

  ParamFamily fam;
  fam.nvars = nvars;
  fam.unknown_count = static_cast<int>(reps.size());
  fam.base = AffinePolynomial(nvars, fam.unknown_count);
  for (int k = 0; k < fam.unknown_count; ++k)
    for (const auto& [m, c] : reps[k].terms())
      fam.base.add_term(m, AffineCoeff{0, {{k, c}}});
  return fam;
}

std::string to_string(LyapStatus s) {
  switch (s) {
    case LyapStatus::found: return "found";
    case LyapStatus::infeasible_at_degree: return "infeasible_at_degree";
    default: return "inconclusive";
  }
}

LyapunovOutcome find_lyapunov(const VectorField& f, int degree, double eps_rel,
                              const std::optional<SymmetrySpec>& sym, const SosOptions& opts) {
  if (degree < 2 || degree % 2 != 0)
    throw std::invalid_argument("Lyapunov candidate degree must be even and at least 2");
  if (!f.is_homogeneous) throw std::invalid_argument("field must be homogeneous");
  const int vdot_deg = degree + f.degree - 1;
  if (vdot_deg % 2 != 0)
    throw std::invalid_argument("Vdot would have odd degree; no sign-definite sos certificate");

  ParamFamily fam =
      sym ? symmetric_form_family(f.nvars, degree, *sym) : full_form_family(f.nvars, degree);

  const Rational eps_v = rational_from_double(eps_rel);
  const Rational eps_vd = rational_from_double(eps_rel * field_coeff_scale(f));
  const int u = fam.unknown_count;

  AffinePolynomial c_v =
      fam.base - AffinePolynomial::from_fixed(eps_v * pow(norm_squared(f.nvars), degree / 2), u);
  AffinePolynomial c_vdot =
      -lie_derivative(fam.base, f) -
      AffinePolynomial::from_fixed(eps_vd * pow(norm_squared(f.nvars), vdot_deg / 2), u);

  FamilyResult res = find_in_family(fam, {c_v, c_vdot}, opts);

  LyapunovOutcome out;
  out.eps_v = to_double(eps_v);
  out.eps_vdot = to_double(eps_vd);
  out.margin = res.margin;
  out.note = res.note;
  switch (res.status) {
    case FamilyStatus::found:
      out.status = LyapStatus::found;
      out.V = fam.base.substitute(res.coefficients);
      out.cert_V = res.certificates[0];
      out.cert_Vdot = res.certificates[1];
      break;
    case FamilyStatus::infeasible:
      // sos completeness for bivariate forms makes infeasibility a proof of
      // non-existence at this degree; in more variables it proves nothing
      out.status = f.nvars == 2 ? LyapStatus::infeasible_at_degree : LyapStatus::inconclusive;
      if (f.nvars != 2) out.note = "sos-infeasible, but sos != nonnegative beyond two variables";
      break;
    case FamilyStatus::inconclusive:
      out.status = LyapStatus::inconclusive;
      break;
  }
  return out;
}

GradientPositivityOutcome certify_positivity_gradient(const Polynomial& V, int w_degree,
                                                      double eps_rel, const SosOptions& opts) {
  auto info = V.degree_info();
  if (info.zero || !info.homogeneous)
    throw std::invalid_argument("certify_positivity_gradient needs a nonzero form");
  if (w_degree < 2 || w_degree % 2 != 0)
    throw std::invalid_argument("W degree must be even and at least 2");
  const int inner_deg = w_degree + info.degree - 2;
  if (inner_deg % 2 != 0)
    throw std::invalid_argument("<grad W, grad V> would have odd degree");

  ParamFamily fam = full_form_family(V.nvars(), w_degree);
  const int u = fam.unknown_count;
  const Rational eps_w = rational_from_double(eps_rel);
  const Rational eps_g =
      rational_from_double(eps_rel * std::max(1.0, to_double(V.max_abs_coeff())));

  AffinePolynomial c_w =
      fam.base - AffinePolynomial::from_fixed(eps_w * pow(norm_squared(V.nvars()), w_degree / 2), u);
  AffinePolynomial c_g =
      grad_inner(fam.base, V) -
      AffinePolynomial::from_fixed(eps_g * pow(norm_squared(V.nvars()), inner_deg / 2), u);

  FamilyResult res = find_in_family(fam, {c_w, c_g}, opts);

  GradientPositivityOutcome out;
  out.status = res.status;
  out.eps_w = to_double(eps_w);
  out.eps_inner = to_double(eps_g);
  out.margin = res.margin;
  out.note = res.note;
  if (res.status == FamilyStatus::found) {
    out.W = fam.base.substitute(res.coefficients);
    out.cert_W = res.certificates[0];
    out.cert_inner = res.certificates[1];
  }
  return out;
}

NumericReport verify_lyapunov_numeric(const Polynomial& V, const VectorField& f, int samples,
                                      uint64_t seed) {
  if (V.nvars() != f.nvars) throw std::invalid_argument("dimension mismatch");
  detail::CompiledPoly v_eval(V);
  detail::CompiledPoly vdot_eval(lie_derivative(V, f));

  // hand-rolled Box-Muller on a fixed-seed engine keeps outputs byte-stable
  std::mt19937_64 rng(seed);
  auto uniform = [&]() { return std::ldexp(static_cast<double>(rng() >> 11), -53); };
  auto gaussian = [&]() {
    double u1 = 0;
    while (u1 <= 1e-300) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * uniform());
  };

  NumericReport rep;
  rep.samples = samples;
  const int n = f.nvars;
  for (int k = 0; k < samples; ++k) {
    EvalPoint pt;
    pt.coords.resize(n);
    double norm = 0;
    do {
      norm = 0;
      for (int i = 0; i < n; ++i) {
        pt.coords[i] = gaussian();
        norm += pt.coords[i] * pt.coords[i];
      }
      norm = std::sqrt(norm);
    } while (norm < 1e-8);
    for (int i = 0; i < n; ++i) pt.coords[i] /= norm;

    double v = v_eval.eval(pt.coords);
    double vd = vdot_eval.eval(pt.coords);
    if (k == 0 || v < rep.min_V) {
      rep.min_V = v;
      rep.argmin_V = pt;
    }
    if (k == 0 || vd > rep.max_Vdot) {
      rep.max_Vdot = vd;
      rep.argmax_Vdot = pt;
    }
  }
  return rep;
}

SweepResult theta_sweep(const std::function<VectorField(double)>& field_at_theta, int degree,
                        double lo, double hi, double resolution, double eps_rel,
                        const std::optional<SymmetrySpec>& sym, const SosOptions& opts,
                        int coarse_points, int max_threads) {
  if (!(lo < hi)) throw std::invalid_argument("sweep interval is empty");
  if (resolution <= 0) throw std::invalid_argument("resolution must be positive");
  coarse_points = std::max(2, coarse_points);

  auto probe = [&](double theta) {
    return find_lyapunov(field_at_theta(theta), degree, eps_rel, sym, opts).status;
  };

  SweepResult out;

  // coarse scan, parallel, recorded in grid order
  std::vector<double> grid(coarse_points);
  for (int i = 0; i < coarse_points; ++i)
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / (coarse_points - 1);
  std::vector<LyapStatus> status(coarse_points);
  parallel_for(coarse_points, [&](int i) { status[i] = probe(grid[i]); }, max_threads);
  for (int i = 0; i < coarse_points; ++i) out.probes.push_back({grid[i], status[i]});

  out.lo_status = status.front();
  out.hi_status = status.back();

  for (int i = 0; i < coarse_points; ++i)
    if (status[i] == LyapStatus::inconclusive) {
      out.halted_inconclusive = true;
      out.note = "inconclusive probe at theta=" + std::to_string(grid[i]);
      return out;
    }

  int flip = -1;
  for (int i = 0; i + 1 < coarse_points; ++i)
    if (status[i] != status[i + 1]) {
      flip = i;
      break;
    }
  if (flip < 0) {
    out.note = "no status flip: " + to_string(status.front()) + " throughout";
    return out;
  }

  double a = grid[flip], b = grid[flip + 1];
  LyapStatus sa = status[flip];
  while (b - a > resolution) {
    double mid = 0.5 * (a + b);
    LyapStatus sm = probe(mid);
    out.probes.push_back({mid, sm});
    if (sm == LyapStatus::inconclusive) {
      out.halted_inconclusive = true;
      out.note = "inconclusive probe at theta=" + std::to_string(mid);
      return out;
    }
    if (sm == sa)
      a = mid;
    else
      b = mid;
  }
  out.bracket = std::make_pair(a, b);
  out.note = "threshold bracketed";
  return out;
}

}  // namespace lyapcert
