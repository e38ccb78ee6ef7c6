#pragma once

// Classical PDM Hamiltonian H = |P - eA|^2/(2 m0 m) + W, Hamilton's equations,
// fixed-step integrators and the q-space / x-space trajectory comparison.

#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pdm/core.hpp"
#include "pdm/mass_models.hpp"
#include "pdm/operators.hpp"
#include "pdm/point_transform.hpp"

namespace pdm {

using Point = std::vector<double>;

struct ClassicalState {
  Point x;
  Point P;  // canonical momentum
  double t = 0;
};

/// Fields of a classical scenario in `dim` dimensions. Gradients left empty
/// are taken by central differences with step fd_eps.
struct ClassicalFields {
  int dim = 1;
  double m0 = 0.5;
  double e = 1.0;
  double fd_eps = 1e-6;
  bool constant_mass = false;

  std::function<double(Point const&)> m;
  std::function<Point(Point const&)> grad_m;
  std::function<double(Point const&)> W;
  std::function<Point(Point const&)> grad_W;
  std::function<Point(Point const&)> A;                    // empty means A = 0
  std::function<std::vector<Point>(Point const&)> jac_A;   // jac[k][j] = dA_j/dx_k

  bool has_A() const { return static_cast<bool>(A); }
};

namespace detail {

template <class F>
Point fd_gradient(F const& f, Point const& x, double eps) {
  Point g(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    Point xp = x, xm = x;
    xp[k] += eps;
    xm[k] -= eps;
    g[k] = (f(xp) - f(xm)) / (2 * eps);
  }
  return g;
}

inline Point vector_potential(ClassicalFields const& f, Point const& x) { return f.has_A() ? f.A(x) : Point(x.size(), 0.0); }

inline Point kinetic_momentum(ClassicalFields const& f, ClassicalState const& s) {
  Point k = vector_potential(f, s.x);
  for (std::size_t j = 0; j < k.size(); ++j) k[j] = s.P[j] - f.e * k[j];
  return k;
}

inline double squared(Point const& v) {
  double s = 0;
  for (double c : v) s += c * c;
  return s;
}

}  // namespace detail

/// 1D fields from a mass profile and a potential, optionally with a vector
/// potential A(x) and its derivative.
inline ClassicalFields fields_1d(MassProfile const& mass, PotentialSpec const& V, std::function<double(double)> A = {},
                                 std::function<double(double)> dA = {}) {
  ClassicalFields f;
  f.dim = 1;
  f.constant_mass = mass.is_constant();
  f.m = [mass](Point const& x) { return mass.checked(x[0]); };
  f.grad_m = [mass](Point const& x) { return Point{mass.d_m(x[0])}; };
  f.W = [V](Point const& x) { return V.W(x[0]); };
  if (A) {
    f.A = [A](Point const& x) { return Point{A(x[0])}; };
    if (dA) f.jac_A = [dA](Point const& x) { return std::vector<Point>{Point{dA(x[0])}}; };
  }
  return f;
}

/// 3D fields with a radial mass m(|x|).
inline ClassicalFields fields_radial(MassProfile const& mass, std::function<double(Point const&)> W,
                                     std::function<Point(Point const&)> A = {}) {
  ClassicalFields f;
  f.dim = 3;
  f.constant_mass = mass.is_constant();
  auto radius = [](Point const& x) { return std::sqrt(detail::squared(x)); };
  f.m = [mass, radius](Point const& x) { return mass.checked(radius(x)); };
  f.grad_m = [mass, radius](Point const& x) {
    const double r = radius(x);
    Point g(3, 0.0);
    if (r == 0) return g;
    const double dm = mass.d_m(r);
    for (int k = 0; k < 3; ++k) g[k] = dm * x[k] / r;
    return g;
  };
  f.W = std::move(W);
  f.A = std::move(A);
  return f;
}

/// |P - eA|^2 / (2 m0 m) + W
inline double hamiltonian_eval(ClassicalState const& s, ClassicalFields const& f) {
  const auto k = detail::kinetic_momentum(f, s);
  return detail::squared(k) / (2 * f.m0 * f.m(s.x)) + f.W(s.x);
}

/// Same energy written through the pseudo-momentum pi = P/sqrt(m) and the
/// q-space potential A_q = A/sqrt(m): |pi - e A_q|^2/(2 m0) + W.
inline double hamiltonian_eval_pseudo(ClassicalState const& s, ClassicalFields const& f) {
  const double root = std::sqrt(f.m(s.x));
  const auto A = detail::vector_potential(f, s.x);
  double k2 = 0;
  for (std::size_t j = 0; j < A.size(); ++j) {
    const double c = s.P[j] / root - f.e * A[j] / root;
    k2 += c * c;
  }
  return k2 / (2 * f.m0) + f.W(s.x);
}

struct PhaseDerivative {
  Point dx, dP;
};

/// Hamilton's equations for hamiltonian_eval.
inline PhaseDerivative eom_rhs(ClassicalState const& s, ClassicalFields const& f) {
  const std::size_t d = s.x.size();
  const double m = f.m(s.x);
  const auto k = detail::kinetic_momentum(f, s);
  const double k2 = detail::squared(k);
  const Point gm = f.grad_m ? f.grad_m(s.x) : detail::fd_gradient(f.m, s.x, f.fd_eps);
  const Point gW = f.grad_W ? f.grad_W(s.x) : detail::fd_gradient(f.W, s.x, f.fd_eps);
  PhaseDerivative out{Point(d), Point(d)};
  for (std::size_t j = 0; j < d; ++j) out.dx[j] = k[j] / (f.m0 * m);
  for (std::size_t i = 0; i < d; ++i) out.dP[i] = k2 * gm[i] / (2 * f.m0 * m * m) - gW[i];
  if (f.has_A()) {
    std::vector<Point> jac;
    if (f.jac_A) {
      jac = f.jac_A(s.x);
    } else {
      jac.resize(d);
      for (std::size_t i = 0; i < d; ++i) {
        Point xp = s.x, xm = s.x;
        xp[i] += f.fd_eps;
        xm[i] -= f.fd_eps;
        const auto ap = f.A(xp), am = f.A(xm);
        jac[i].resize(d);
        for (std::size_t j = 0; j < d; ++j) jac[i][j] = (ap[j] - am[j]) / (2 * f.fd_eps);
      }
    }
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) out.dP[i] += f.e * out.dx[j] * jac[i][j];
  }
  return out;
}

/// Hamilton's equations of an arbitrary H(x, P) by central differences.
inline PhaseDerivative fd_hamilton_rhs(std::function<double(ClassicalState const&)> const& H, ClassicalState const& s, double eps) {
  const std::size_t d = s.x.size();
  PhaseDerivative out{Point(d), Point(d)};
  for (std::size_t i = 0; i < d; ++i) {
    auto a = s, b = s;
    a.P[i] += eps;
    b.P[i] -= eps;
    out.dx[i] = (H(a) - H(b)) / (2 * eps);
    a = s;
    b = s;
    a.x[i] += eps;
    b.x[i] -= eps;
    out.dP[i] = -(H(a) - H(b)) / (2 * eps);
  }
  return out;
}

/// max |eom_rhs - central differences of hamiltonian_eval| with step eps.
inline double gradient_check(ClassicalState const& s, ClassicalFields const& f, double eps = 1e-5) {
  const auto exact = eom_rhs(s, f);
  const auto fd = fd_hamilton_rhs([&f](ClassicalState const& st) { return hamiltonian_eval(st, f); }, s, eps);
  double worst = 0;
  for (std::size_t i = 0; i < s.x.size(); ++i)
    worst = std::max({worst, std::abs(exact.dx[i] - fd.dx[i]), std::abs(exact.dP[i] - fd.dP[i])});
  return worst;
}

/// |m0 m xdot + eA - P| along the state.
inline double legendre_residual(ClassicalState const& s, ClassicalFields const& f) {
  const auto rhs = eom_rhs(s, f);
  const auto A = detail::vector_potential(f, s.x);
  const double m = f.m(s.x);
  double worst = 0;
  for (std::size_t j = 0; j < s.x.size(); ++j) worst = std::max(worst, std::abs(f.m0 * m * rhs.dx[j] + f.e * A[j] - s.P[j]));
  return worst;
}

enum class Scheme { rk4, leapfrog };

inline const char* to_string(Scheme s) { return s == Scheme::rk4 ? "rk4" : "leapfrog"; }

inline Scheme scheme_from_string(std::string const& s) {
  if (s == "rk4") return Scheme::rk4;
  if (s == "leapfrog") return Scheme::leapfrog;
  throw ValidationError(detail::concat("unknown integration scheme '", s, "'; valid: rk4, leapfrog"));
}

struct TrajectoryResult {
  std::vector<ClassicalState> samples;
  std::vector<double> energies;
  double drift = 0;  // max |E(t) - E(0)| / |E(0)|
  Scheme scheme = Scheme::rk4;
  double dt = 0;
  bool truncated = false;
  std::string diagnostic;
};

using RhsFunction = std::function<PhaseDerivative(ClassicalState const&)>;

namespace detail {

inline ClassicalState advance(ClassicalState const& s, PhaseDerivative const& k, double h) {
  ClassicalState out = s;
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    out.x[i] += h * k.dx[i];
    out.P[i] += h * k.dP[i];
  }
  out.t += h;
  return out;
}

inline ClassicalState rk4_step(RhsFunction const& rhs, ClassicalState const& s, double dt) {
  const auto k1 = rhs(s);
  const auto k2 = rhs(advance(s, k1, dt / 2));
  const auto k3 = rhs(advance(s, k2, dt / 2));
  const auto k4 = rhs(advance(s, k3, dt));
  ClassicalState out = s;
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    out.x[i] += dt / 6 * (k1.dx[i] + 2 * k2.dx[i] + 2 * k3.dx[i] + k4.dx[i]);
    out.P[i] += dt / 6 * (k1.dP[i] + 2 * k2.dP[i] + 2 * k3.dP[i] + k4.dP[i]);
  }
  out.t = s.t + dt;
  return out;
}

inline bool finite_state(ClassicalState const& s) {
  for (std::size_t i = 0; i < s.x.size(); ++i)
    if (!std::isfinite(s.x[i]) || !std::isfinite(s.P[i])) return false;
  return true;
}

}  // namespace detail

/// Fixed-step integration of an arbitrary right-hand side; energies from H.
inline TrajectoryResult integrate_rhs(RhsFunction const& rhs, std::function<double(ClassicalState const&)> const& H,
                                      ClassicalState const& s0, double dt, std::size_t steps, std::size_t sample_every = 1) {
  if (!(dt > 0)) throw ValidationError("integration step dt must be positive");
  if (sample_every == 0) sample_every = 1;
  TrajectoryResult out;
  out.dt = dt;
  out.samples.push_back(s0);
  out.energies.push_back(H(s0));
  ClassicalState s = s0;
  for (std::size_t n = 1; n <= steps; ++n) {
    try {
      s = detail::rk4_step(rhs, s, dt);
    } catch (std::exception const& ex) {
      out.truncated = true;
      out.diagnostic = detail::concat("step ", n, " failed at t=", s.t, ": ", ex.what());
      break;
    }
    if (!detail::finite_state(s)) {
      out.truncated = true;
      out.diagnostic = detail::concat("non-finite state at t=", s.t, " (step ", n, ")");
      break;
    }
    if (n % sample_every == 0 || n == steps) {
      out.samples.push_back(s);
      out.energies.push_back(H(s));
    }
  }
  const double E0 = out.energies.front();
  for (double E : out.energies) out.drift = std::max(out.drift, std::abs(E - E0) / std::max(std::abs(E0), 1e-300));
  return out;
}

/// rk4 for any scenario; leapfrog (kick-drift-kick) only for constant mass
/// without vector potential, where H separates.
inline TrajectoryResult integrate(ClassicalState const& s0, ClassicalFields const& f, double dt, std::size_t steps,
                                  Scheme scheme = Scheme::rk4, std::size_t sample_every = 1) {
  auto H = [&f](ClassicalState const& s) { return hamiltonian_eval(s, f); };
  if (scheme == Scheme::rk4) {
    auto out = integrate_rhs([&f](ClassicalState const& s) { return eom_rhs(s, f); }, H, s0, dt, steps, sample_every);
    out.scheme = Scheme::rk4;
    return out;
  }
  if (!f.constant_mass || f.has_A()) throw ValidationError("leapfrog needs a separable Hamiltonian: constant mass and no vector potential");
  if (!(dt > 0)) throw ValidationError("integration step dt must be positive");
  if (sample_every == 0) sample_every = 1;
  TrajectoryResult out;
  out.scheme = Scheme::leapfrog;
  out.dt = dt;
  out.samples.push_back(s0);
  out.energies.push_back(H(s0));
  ClassicalState s = s0;
  auto force = [&f](Point const& x) { return f.grad_W ? f.grad_W(x) : detail::fd_gradient(f.W, x, f.fd_eps); };
  Point g = force(s.x);
  for (std::size_t n = 1; n <= steps; ++n) {
    const double m = f.m(s.x);
    for (std::size_t i = 0; i < s.x.size(); ++i) s.P[i] -= 0.5 * dt * g[i];
    for (std::size_t i = 0; i < s.x.size(); ++i) s.x[i] += dt * s.P[i] / (f.m0 * m);
    g = force(s.x);
    for (std::size_t i = 0; i < s.x.size(); ++i) s.P[i] -= 0.5 * dt * g[i];
    s.t += dt;
    if (!detail::finite_state(s)) {
      out.truncated = true;
      out.diagnostic = detail::concat("non-finite state at t=", s.t, " (step ", n, ")");
      break;
    }
    if (n % sample_every == 0 || n == steps) {
      out.samples.push_back(s);
      out.energies.push_back(H(s));
    }
  }
  const double E0 = out.energies.front();
  for (double E : out.energies) out.drift = std::max(out.drift, std::abs(E - E0) / std::max(std::abs(E0), 1e-300));
  return out;
}

struct EquivalenceOptions {
  double x_lo = -10, x_hi = 10;  // domain of the tabulated map
  double map_spacing = 1e-3;
  std::optional<double> anchor = 0.0;  // x where q = 0
  double m0 = 0.5;
  double e = 1.0;
  std::function<double(double)> A_q;  // q-space vector potential; empty means none
};

struct EquivalenceReport {
  double max_discrepancy = 0;  // max |x_direct(t) - x(q(t))|
  double worst_time = 0;
  double drift_direct = 0, drift_mapped = 0;
  std::size_t steps = 0;
};

/// Integrates the constant-mass problem in q (qdot = sqrt(m) xdot initially),
/// maps q(t) back through the inverse transform and compares with the direct
/// PDM integration in x. With A_q set, the x-space potential is
/// A(x) = sqrt(m) A_q(q(x)).
inline EquivalenceReport transform_equivalence_check(MassProfile const& mass, PotentialSpec const& V_q, double x0, double v0,
                                                     double dt, std::size_t steps, EquivalenceOptions const& opt = {}) {
  const auto n = static_cast<std::size_t>(std::llround((opt.x_hi - opt.x_lo) / opt.map_spacing)) + 1;
  const auto map = build_map(mass, uniform_grid(opt.x_lo, opt.x_hi, std::max<std::size_t>(n, 3)), opt.anchor);
  const double eps = 1e-6;
  auto dV = [V_q, eps](double q) { return (V_q.W(q + eps) - V_q.W(q - eps)) / (2 * eps); };
  auto A_q = opt.A_q;
  auto dA_q = [A_q, eps](double q) { return (A_q(q + eps) - A_q(q - eps)) / (2 * eps); };

  // q space, unit mass multiplier.
  ClassicalFields fq = fields_1d(constant_mass(), V_q, A_q, A_q ? std::function<double(double)>(dA_q) : std::function<double(double)>());
  fq.m0 = opt.m0;
  fq.e = opt.e;
  fq.grad_W = [dV](Point const& q) { return Point{dV(q[0])}; };

  // x space, W(x) = V_q(q(x)).
  PotentialSpec Wx;
  Wx.V = [V_q, map](double x) { return V_q.W(map.q_at(x)); };
  std::function<double(double)> Ax, dAx;
  if (A_q) {
    Ax = [A_q, map, mass](double x) { return std::sqrt(mass.checked(x)) * A_q(map.q_at(x)); };
    dAx = [A_q, dA_q, map, mass](double x) {
      const double m = mass.checked(x), q = map.q_at(x);
      return 0.5 * mass.d_m(x) / std::sqrt(m) * A_q(q) + m * dA_q(q);
    };
  }
  ClassicalFields fx = fields_1d(mass, Wx, Ax, dAx);
  fx.m0 = opt.m0;
  fx.e = opt.e;
  fx.grad_W = [dV, map, mass](Point const& x) { return Point{dV(map.q_at(x[0])) * std::sqrt(mass.checked(x[0]))}; };

  const double m_start = mass.checked(x0);
  const double q0 = map.q_at(x0);
  const double qdot0 = std::sqrt(m_start) * v0;
  ClassicalState sq{{q0}, {opt.m0 * qdot0 + (A_q ? opt.e * A_q(q0) : 0.0)}, 0};
  ClassicalState sx{{x0}, {opt.m0 * m_start * v0 + (A_q ? opt.e * Ax(x0) : 0.0)}, 0};

  auto rq = [&fq](ClassicalState const& s) { return eom_rhs(s, fq); };
  auto rx = [&fx](ClassicalState const& s) { return eom_rhs(s, fx); };
  EquivalenceReport rep;
  rep.steps = steps;
  const double E0q = hamiltonian_eval(sq, fq), E0x = hamiltonian_eval(sx, fx);
  for (std::size_t k = 1; k <= steps; ++k) {
    sq = detail::rk4_step(rq, sq, dt);
    if (sq.x[0] < map.q_min() || sq.x[0] > map.q_max())
      throw DomainError(detail::concat("q trajectory left the map domain at t=", sq.t));
    sx = detail::rk4_step(rx, sx, dt);
    if (sx.x[0] < opt.x_lo || sx.x[0] > opt.x_hi) throw DomainError(detail::concat("x trajectory left the map domain at t=", sx.t));
    const double diff = std::abs(sx.x[0] - map.x_at(sq.x[0]));
    if (diff > rep.max_discrepancy) {
      rep.max_discrepancy = diff;
      rep.worst_time = sx.t;
    }
    rep.drift_direct = std::max(rep.drift_direct, std::abs(hamiltonian_eval(sx, fx) - E0x) / std::max(std::abs(E0x), 1e-300));
    rep.drift_mapped = std::max(rep.drift_mapped, std::abs(hamiltonian_eval(sq, fq) - E0q) / std::max(std::abs(E0q), 1e-300));
  }
  return rep;
}

/// Integrates hamiltonian_eval and hamiltonian_eval_pseudo with
/// finite-difference Hamilton equations from the same state and returns the
/// largest separation of the trajectories (positions and momenta).
inline double pseudo_form_equivalence(ClassicalState const& s0, ClassicalFields const& f, double dt, std::size_t steps,
                                      double eps = 1e-5) {
  auto Ha = [&f](ClassicalState const& s) { return hamiltonian_eval(s, f); };
  auto Hb = [&f](ClassicalState const& s) { return hamiltonian_eval_pseudo(s, f); };
  ClassicalState a = s0, b = s0;
  double worst = 0;
  for (std::size_t k = 0; k < steps; ++k) {
    a = detail::rk4_step([&](ClassicalState const& s) { return fd_hamilton_rhs(Ha, s, eps); }, a, dt);
    b = detail::rk4_step([&](ClassicalState const& s) { return fd_hamilton_rhs(Hb, s, eps); }, b, dt);
    for (std::size_t i = 0; i < a.x.size(); ++i) worst = std::max({worst, std::abs(a.x[i] - b.x[i]), std::abs(a.P[i] - b.P[i])});
  }
  return worst;
}

}  // namespace pdm
