#include "lyapcert/dynamics.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "compiled_eval.hpp"
#include "lyapcert/parallel.hpp"

namespace lyapcert {

namespace {

// term-list form of a field for tight integration loops
struct CompiledField {
  int n = 0;
  std::vector<detail::CompiledPoly> comps;

  explicit CompiledField(const VectorField& f) : n(f.nvars) {
    comps.reserve(n);
    for (const auto& c : f.components) comps.emplace_back(c);
  }

  void eval(const std::vector<double>& x, std::vector<double>& out) const {
    for (int i = 0; i < n; ++i) out[i] = comps[i].eval(x);
  }
};

double norm_of(const std::vector<double>& x) {
  double s = 0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

bool finite(const std::vector<double>& x) {
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

// distance from point p to the segment [a, b]
double segment_distance(const std::vector<double>& a, const std::vector<double>& b,
                        const std::vector<double>& p) {
  double ab2 = 0, apab = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    double d = b[i] - a[i];
    ab2 += d * d;
    apab += (p[i] - a[i]) * d;
  }
  double t = ab2 > 0 ? std::clamp(apab / ab2, 0.0, 1.0) : 0.0;
  double dist2 = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    double q = a[i] + t * (b[i] - a[i]) - p[i];
    dist2 += q * q;
  }
  return std::sqrt(dist2);
}

}  // namespace

std::string to_string(TrajectoryVerdict v) {
  switch (v) {
    case TrajectoryVerdict::converged: return "converged";
    case TrajectoryVerdict::periodic_suspected: return "periodic_suspected";
    case TrajectoryVerdict::diverged: return "diverged";
    default: return "budget_exhausted";
  }
}

VectorField make_vector_field(std::vector<Polynomial> components) {
  if (components.empty()) throw std::invalid_argument("vector field has no components");
  VectorField f;
  f.nvars = static_cast<int>(components.size());
  for (const auto& c : components) {
    if (c.nvars() != f.nvars)
      throw std::invalid_argument("component variable count does not match the field dimension");
    Monomial origin{std::vector<int>(f.nvars, 0)};
    if (c.coeff(origin) != 0)
      throw std::invalid_argument("field has a constant term; the origin must be an equilibrium");
  }
  f.components = std::move(components);

  int deg = 0;
  bool homog = true;
  for (const auto& c : f.components) {
    auto info = c.degree_info();
    if (info.zero) continue;
    if (!info.homogeneous) homog = false;
    if (deg == 0)
      deg = info.degree;
    else if (info.degree != deg)
      homog = false;
    deg = std::max(deg, info.degree);
  }
  f.degree = deg;
  f.is_homogeneous = homog;
  return f;
}

VectorField family_rotated_center(double theta, double lambda) {
  const Rational c = rational_from_double(std::cos(theta));
  const Rational s = rational_from_double(std::sin(theta));
  const Rational lam = rational_from_double(lambda);

  Polynomial x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  Polynomial r2 = x * x + y * y;              // x^2 + y^2
  Polynomial q2 = Rational(2) * (x * x) + y * y;  // 2x^2 + y^2
  Polynomial base1 = Rational(-2) * lam * (y * r2) - Rational(2) * (y * q2);
  Polynomial base2 = Rational(4) * lam * (x * r2) + Rational(2) * (x * q2);

  return make_vector_field({c * base1 - s * base2, s * base1 + c * base2});
}

VectorField family_nonmonotone(double theta) {
  const Rational c = rational_from_double(std::cos(theta));
  const Rational s = rational_from_double(std::sin(theta));
  Polynomial x3 = Polynomial::term(2, {3, 0}, 1);
  Polynomial y3 = Polynomial::term(2, {0, 3}, 1);
  return make_vector_field({Rational(-1) * s * x3 + c * y3, Rational(-1) * c * x3 - s * y3});
}

Trajectory integrate(const VectorField& f, const EvalPoint& x0, const IntegrationOptions& opts) {
  if (static_cast<int>(x0.coords.size()) != f.nvars)
    throw std::invalid_argument("initial condition has wrong dimension");

  CompiledField cf(f);
  const int n = f.nvars;
  const int speed_exp = std::max(0, f.degree - 1);

  Trajectory traj;
  const long auto_stride = std::min(std::max(1L, opts.max_steps / 50000), 1L << 30);
  const long stride = opts.record_stride > 0 ? opts.record_stride : auto_stride;

  std::vector<double> x = x0.coords;
  double t = 0;
  auto record = [&](double time, const std::vector<double>& state) {
    traj.times.push_back(time);
    traj.states.push_back(EvalPoint{state});
  };
  record(t, x);

  double r = norm_of(x);
  if (r <= opts.conv_radius) {
    traj.verdict = TrajectoryVerdict::converged;
    return traj;
  }
  if (r >= opts.blowup_radius) {
    traj.verdict = TrajectoryVerdict::diverged;
    return traj;
  }

  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n), xn(n);
  auto rk4 = [&](double dt) {
    cf.eval(x, k1);
    for (int i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k1[i];
    cf.eval(tmp, k2);
    for (int i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k2[i];
    cf.eval(tmp, k3);
    for (int i = 0; i < n; ++i) tmp[i] = x[i] + dt * k3[i];
    cf.eval(tmp, k4);
    for (int i = 0; i < n; ++i)
      xn[i] = x[i] + dt / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  };

  const double two_pi = 6.283185307179586;
  bool last_recorded = true;

  for (long step = 0; step < opts.max_steps; ++step) {
    r = norm_of(x);
    double dt = opts.base_step / std::max(std::pow(r, speed_exp), 1e-300);

    rk4(dt);
    int shrink = 0;
    while (finite(xn) && norm_of(xn) > 1.5 * r && shrink < 40) {
      dt *= 0.5;
      rk4(dt);
      ++shrink;
    }
    if (!finite(xn)) {
      traj.nonfinite = true;
      traj.verdict = TrajectoryVerdict::diverged;
      break;
    }

    // winding of the (x1, x2) projection
    if (n >= 2) {
      double cross = x[0] * xn[1] - x[1] * xn[0];
      double dot = x[0] * xn[0] + x[1] * xn[1];
      if (cross != 0 || dot != 0) traj.winding_angle += std::atan2(cross, dot);
    }

    bool periodic = std::abs(traj.winding_angle) >= two_pi - 1e-9 &&
                    segment_distance(x, xn, x0.coords) <= opts.tube_radius;

    t += dt;
    x = xn;
    traj.steps_taken = step + 1;
    last_recorded = false;
    if ((step + 1) % stride == 0) {
      record(t, x);
      last_recorded = true;
    }

    double rn = norm_of(x);
    if (rn <= opts.conv_radius) {
      traj.verdict = TrajectoryVerdict::converged;
      break;
    }
    if (rn >= opts.blowup_radius) {
      traj.verdict = TrajectoryVerdict::diverged;
      break;
    }
    if (periodic) {
      traj.verdict = TrajectoryVerdict::periodic_suspected;
      break;
    }
    if (step + 1 == opts.max_steps) traj.verdict = TrajectoryVerdict::budget_exhausted;
  }

  if (!last_recorded) record(t, x);
  return traj;
}

std::function<double(const EvalPoint&)> conserved_quantity_rotated(double lambda) {
  if (lambda <= 0) throw std::invalid_argument("lambda must be positive");
  return [lambda](const EvalPoint& pt) {
    if (pt.coords.size() != 2) throw std::invalid_argument("expected a planar point");
    double x = pt.coords[0], y = pt.coords[1];
    return std::pow(2 * x * x + y * y, lambda) * (x * x + y * y);
  };
}

StabilityReport empirical_stability(const VectorField& f, int n_initial,
                                    const IntegrationOptions& opts, uint64_t seed,
                                    int max_threads) {
  if (n_initial < 1) throw std::invalid_argument("need at least one initial condition");
  if (!f.is_homogeneous)
    throw std::invalid_argument("sphere coverage only suffices for homogeneous fields");

  StabilityReport rep;
  rep.n = n_initial;
  rep.starts.resize(n_initial);
  rep.verdicts.resize(n_initial);

  if (f.nvars == 2) {
    // equispaced angles, offset off the axes
    for (int i = 0; i < n_initial; ++i) {
      double a = 6.283185307179586 * (i + 0.5) / n_initial;
      rep.starts[i] = EvalPoint{{std::cos(a), std::sin(a)}};
    }
  } else {
    std::mt19937_64 rng(seed);
    auto uniform = [&]() { return std::ldexp(static_cast<double>(rng() >> 11), -53); };
    for (int i = 0; i < n_initial; ++i) {
      std::vector<double> v(f.nvars);
      double norm = 0;
      do {
        norm = 0;
        for (auto& c : v) {
          double u1 = 0;
          while (u1 <= 1e-300) u1 = uniform();
          c = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * uniform());
          norm += c * c;
        }
        norm = std::sqrt(norm);
      } while (norm < 1e-8);
      for (auto& c : v) c /= norm;
      rep.starts[i] = EvalPoint{std::move(v)};
    }
  }

  parallel_for(
      n_initial, [&](int i) { rep.verdicts[i] = integrate(f, rep.starts[i], opts).verdict; },
      max_threads);
  for (auto v : rep.verdicts) rep.counts[v]++;
  return rep;
}

}  // namespace lyapcert
