#pragma once

// Point canonical transformation q(x) = Int sqrt(m) dx, its inverse, the radial
// form q_j = (S/sqrt(m)) x_j, and the wavefunction map psi(q) = m^(-1/4) phi(x).

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "pdm/core.hpp"
#include "pdm/mass_models.hpp"
#include "pdm/numerics.hpp"

namespace pdm {

/// Tabulated q(x) on an ascending x grid. Both directions are cubic Hermite
/// interpolants that use the exact slope dq/dx = sqrt(m); the inverse is
/// monotonicity-limited.
struct TransformMap {
  std::vector<double> x_grid;
  std::vector<double> q_of_x;
  std::vector<double> jac;
  static constexpr double upsilon = -0.25;

  double q_at(double x) const { return forward(x); }
  double x_at(double q) const { return inverse(q); }
  double q_min() const { return q_of_x.front(); }
  double q_max() const { return q_of_x.back(); }

  // q(x) and x(q) interpolants.
  numerics::CubicHermite forward, inverse;
};

/// Builds q(x) by cumulative Simpson quadrature of sqrt(m). q vanishes at
/// `anchor` (default: the first grid point).
inline TransformMap build_map(MassProfile const& m, std::span<const double> x_grid, std::optional<double> anchor = {}) {
  if (x_grid.size() < 3) throw ValidationError("transform map needs at least 3 grid points");
  if (!is_ascending(x_grid)) throw ValidationError("transform map grid must be strictly ascending");
  TransformMap map;
  map.x_grid.assign(x_grid.begin(), x_grid.end());
  map.jac.resize(x_grid.size());
  for (std::size_t i = 0; i < x_grid.size(); ++i) map.jac[i] = std::sqrt(m.checked(x_grid[i]));
  map.q_of_x = numerics::cumulative_simpson<double>(map.x_grid, map.jac);
  map.forward = numerics::CubicHermite(map.x_grid, map.q_of_x, map.jac);
  if (anchor) {
    const double shift = map.forward(*anchor);
    for (double& q : map.q_of_x) q -= shift;
    map.forward = numerics::CubicHermite(map.x_grid, map.q_of_x, map.jac);
  }
  if (!is_ascending(map.q_of_x)) throw NumericalError("q(x) is not strictly increasing; grid too coarse for the mass profile");
  std::vector<double> slope(map.jac.size());
  for (std::size_t i = 0; i < slope.size(); ++i) slope[i] = 1.0 / map.jac[i];
  numerics::limit_monotone(map.q_of_x, map.x_grid, slope);
  map.inverse = numerics::CubicHermite(map.q_of_x, map.x_grid, std::move(slope));
  return map;
}

/// Factor S(r)/sqrt(m(r)) of the radial map; DomainError at singular radii.
inline double radial_factor(ScalarMultiplier const& S, MassProfile const& m, double r) {
  if (S.singular_at(r)) throw DomainError(detail::concat("scalar multiplier '", S.tag, "' is singular at r=", r));
  return S(r) / std::sqrt(m.checked(r));
}

/// q_j = (S(r)/sqrt(m(r))) x_j for each point.
inline std::vector<Vec3> radial_map(ScalarMultiplier const& S, MassProfile const& m, std::span<const Vec3> points) {
  std::vector<Vec3> out;
  out.reserve(points.size());
  for (auto const& x : points) {
    const double r = norm(x);
    if (r == 0.0) {
      if (S.singular_at(0.0)) throw DomainError(detail::concat("radial map undefined at r=0: scalar multiplier '", S.tag, "' is singular"));
      out.push_back({0, 0, 0});
      continue;
    }
    out.push_back(radial_factor(S, m, r) * x);
  }
  return out;
}

struct JacobianTraceReport {
  double max_residual = 0;
  double worst_radius = 0;
};

/// max over r of |sum_j dq_j/dx_j - N sqrt(m(r))|, with the divergence of the
/// radial map taken by fourth-order central differences (step h) in N dimensions at the
/// point r*u, u a fixed non-axial unit vector.
inline JacobianTraceReport jacobian_trace_residual(ScalarMultiplier const& S, MassProfile const& m, int N,
                                                   std::span<const double> r_grid, double h = 1e-4) {
  catalog::check_n(N);
  std::vector<double> u(N);
  double un = 0;
  for (int j = 0; j < N; ++j) {
    u[j] = 1.0 + 0.37 * j;
    un += u[j] * u[j];
  }
  for (double& c : u) c /= std::sqrt(un);
  auto q_component = [&](std::vector<double> const& x, int j) {
    double r2 = 0;
    for (double c : x) r2 += c * c;
    return radial_factor(S, m, std::sqrt(r2)) * x[j];
  };
  JacobianTraceReport rep;
  for (double r : r_grid) {
    std::vector<double> x(N);
    for (int j = 0; j < N; ++j) x[j] = r * u[j];
    double trace = 0;
    for (int j = 0; j < N; ++j) {
      auto at = [&](double d) {
        auto y = x;
        y[j] += d;
        return q_component(y, j);
      };
      trace += (8 * (at(h) - at(-h)) - (at(2 * h) - at(-2 * h))) / (12 * h);
    }
    const double res = std::abs(trace - N * std::sqrt(m.checked(r)));
    if (res >= rep.max_residual) {
      rep.max_residual = res;
      rep.worst_radius = r;
    }
  }
  return rep;
}

enum class Measure { dx, dq };

inline const char* to_string(Measure m) { return m == Measure::dx ? "dx" : "dq"; }

/// Complex samples on an ascending grid tagged with the integration measure.
struct GriddedWavefunction {
  std::vector<double> grid;
  std::vector<complex> values;
  Measure measure = Measure::dx;

  /// Integral of |values|^2 over the grid (Simpson).
  double norm_squared() const {
    std::vector<double> density(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) density[i] = std::norm(values[i]);
    return numerics::integrate<double>(grid, density);
  }

  void normalize() {
    const double n2 = norm_squared();
    if (!(n2 > 0)) throw NumericalError("cannot normalize a zero wavefunction");
    const double s = 1.0 / std::sqrt(n2);
    for (auto& v : values) v *= s;
  }

  complex at(double t) const { return numerics::lagrange4<complex>(grid, values, t); }
};

namespace detail {

inline void require_inside(std::span<const double> grid, std::span<const double> targets, char const* what) {
  const double lo = grid.front(), hi = grid.back();
  const double slack = 1e-12 * std::max(1.0, hi - lo);
  double below = lo, above = hi;
  for (double t : targets) {
    below = std::min(below, t);
    above = std::max(above, t);
  }
  if (below < lo - slack || above > hi + slack)
    throw DomainError(concat(what, ": extrapolation needed; requested [", below, ", ", above, "] but samples cover [", lo, ", ", hi,
                             "]; clipped interval(s): ", below < lo - slack ? concat("[", below, ", ", lo, ") ") : std::string{},
                             above > hi + slack ? concat("(", hi, ", ", above, "]") : std::string{}));
}

inline bool same_nodes(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > 1e-14 * std::max(1.0, std::abs(a[i]))) return false;
  return true;
}

}  // namespace detail

/// phi(x) = m(x)^(1/4) psi(q(x)) on the map's x grid.
inline GriddedWavefunction push_wavefunction(GriddedWavefunction const& psi, TransformMap const& map, MassProfile const& m) {
  if (psi.measure != Measure::dq) throw ValidationError("push_wavefunction expects a q-space (dq) wavefunction");
  GriddedWavefunction phi{map.x_grid, std::vector<complex>(map.x_grid.size()), Measure::dx};
  const bool direct = detail::same_nodes(psi.grid, map.q_of_x);
  if (!direct) detail::require_inside(psi.grid, map.q_of_x, "push_wavefunction");
  for (std::size_t i = 0; i < map.x_grid.size(); ++i) {
    const complex v = direct ? psi.values[i] : psi.at(map.q_of_x[i]);
    phi.values[i] = std::pow(m.checked(map.x_grid[i]), 0.25) * v;
  }
  return phi;
}

/// psi(q) = m(x(q))^(-1/4) phi(x(q)) on `q_grid` (default: uniform over the
/// map's q range with as many points as the x grid).
inline GriddedWavefunction pull_wavefunction(GriddedWavefunction const& phi, TransformMap const& map, MassProfile const& m,
                                             std::optional<std::vector<double>> q_grid = {}) {
  if (phi.measure != Measure::dx) throw ValidationError("pull_wavefunction expects an x-space (dx) wavefunction");
  std::vector<double> qs = q_grid ? std::move(*q_grid) : uniform_grid(map.q_min(), map.q_max(), map.x_grid.size());
  detail::require_inside(std::span<const double>(map.q_of_x), qs, "pull_wavefunction");
  std::vector<double> xs(qs.size());
  for (std::size_t j = 0; j < qs.size(); ++j) xs[j] = map.x_at(std::clamp(qs[j], map.q_min(), map.q_max()));
  detail::require_inside(phi.grid, xs, "pull_wavefunction");
  GriddedWavefunction psi{qs, std::vector<complex>(qs.size()), Measure::dq};
  for (std::size_t j = 0; j < qs.size(); ++j) psi.values[j] = std::pow(m.checked(xs[j]), -0.25) * phi.at(std::clamp(xs[j], phi.grid.front(), phi.grid.back()));
  return psi;
}

}  // namespace pdm
