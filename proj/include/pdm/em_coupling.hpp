#pragma once

// Vector potentials, the Coulomb-gauge eligibility test under the radial map,
// and the two exactly solvable magnetic examples (with and without an
// electric field) in analytic and numeric form.

#include <cmath>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "pdm/core.hpp"
#include "pdm/mass_models.hpp"
#include "pdm/operators.hpp"
#include "pdm/point_transform.hpp"
#include "pdm/spectral_solver.hpp"

namespace pdm {

enum class GaugeFamily { landau, symmetric };

inline const char* to_string(GaugeFamily f) { return f == GaugeFamily::landau ? "landau" : "symmetric"; }

inline GaugeFamily gauge_family_from_string(std::string const& s) {
  if (s == "landau") return GaugeFamily::landau;
  if (s == "symmetric") return GaugeFamily::symmetric;
  throw ValidationError(detail::concat("unknown gauge family '", s, "'; valid: landau, symmetric"));
}

struct VectorPotentialSpec {
  GaugeFamily family = GaugeFamily::symmetric;
  double B0 = 1.0;
  ScalarMultiplier S;
  MassProfile m;

  /// Potential in x coordinates before the radial rescaling.
  Vec3 tilde(Vec3 const& x) const {
    if (family == GaugeFamily::landau) return {-B0 * x[1], 0.0, 0.0};
    return {-0.5 * B0 * x[1], 0.5 * B0 * x[0], 0.0};
  }

  /// Both families are linear with zero trace.
  double tilde_divergence(Vec3 const&) const { return 0.0; }

  /// A(q(x)) = (S(r)/sqrt(m(r))) * tilde(x).
  Vec3 full(Vec3 const& x) const { return radial_factor(S, m, norm(x)) * tilde(x); }
};

inline VectorPotentialSpec make_vector_potential(GaugeFamily family, double B0, PairCatalogEntry const& pair) {
  return {family, B0, pair.scalar, pair.mass};
}

/// Curl of `field` at x by central differences with step h.
template <class F>
Vec3 curl_fd(F const& field, Vec3 const& x, double h = 1e-5) {
  auto partial = [&](int comp, int axis) {
    Vec3 xp = x, xm = x;
    xp[axis] += h;
    xm[axis] -= h;
    return (field(xp)[comp] - field(xm)[comp]) / (2 * h);
  };
  return {partial(2, 1) - partial(1, 2), partial(0, 2) - partial(2, 0), partial(1, 0) - partial(0, 1)};
}

/// `count` points uniform in volume on the shell r_lo <= r <= r_hi.
inline std::vector<Vec3> sample_shell(std::size_t count, double r_lo, double r_hi, std::uint64_t seed = 20240611) {
  if (!(r_hi >= r_lo && r_lo >= 0)) throw ValidationError("sample_shell: need 0 <= r_lo <= r_hi");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit;
  std::vector<Vec3> out;
  out.reserve(count);
  const double a = r_lo * r_lo * r_lo, b = r_hi * r_hi * r_hi;
  while (out.size() < count) {
    Vec3 d{gauss(rng), gauss(rng), gauss(rng)};
    const double len = norm(d);
    if (len < 1e-12) continue;
    const double r = std::cbrt(a + (b - a) * unit(rng));
    out.push_back((r / len) * d);
  }
  return out;
}

struct GaugeResidualReport {
  double max_residual = 0;
  Vec3 worst_point{0, 0, 0};
  std::size_t evaluated = 0;
  std::vector<Vec3> skipped;  // r = 0 or singular S
};

/// max over points of |(S/m)[div tilde + (x.tilde/r)(S'/S - m'/(2m))]|, the
/// divergence of A(q(x)) in q coordinates.
inline GaugeResidualReport gauge_divergence_residual(VectorPotentialSpec const& spec, std::span<const Vec3> points) {
  GaugeResidualReport rep;
  for (auto const& x : points) {
    const double r = norm(x);
    if (r == 0.0 || spec.S.singular_at(r)) {
      rep.skipped.push_back(x);
      continue;
    }
    const double S = spec.S(r), dS = spec.S.d_S(r);
    const double m = spec.m.checked(r), dm = spec.m.d_m(r);
    const double radial = dot(x, spec.tilde(x)) / r;
    const double res = std::abs(S / m * (spec.tilde_divergence(x) + radial * (dS / S - 0.5 * dm / m)));
    ++rep.evaluated;
    if (res >= rep.max_residual) {
      rep.max_residual = res;
      rep.worst_point = x;
    }
  }
  return rep;
}

struct Eligibility {
  bool eligible = false;
  std::string reason;
  Vec3 worst_point{0, 0, 0};
  double max_residual = 0;
};

inline Eligibility eligibility(VectorPotentialSpec const& spec, std::span<const Vec3> points, double tol = 1e-10) {
  const auto rep = gauge_divergence_residual(spec, points);
  Eligibility out{rep.max_residual <= tol, {}, rep.worst_point, rep.max_residual};
  if (out.eligible) {
    out.reason = spec.family == GaugeFamily::symmetric ? "x.A vanishes identically, so the transformed divergence is zero"
                                                       : "S'/S - m'/(2m) vanishes on the samples, so the x.A term drops out";
  } else {
    out.reason = detail::concat("nonzero x.A term times (S'/S - m'/(2m)); residual ", rep.max_residual, " at r=", norm(rep.worst_point));
  }
  return out;
}

inline Eligibility eligibility(VectorPotentialSpec const& spec) {
  const auto pts = sample_shell(100, 0.5, 5.0);
  return eligibility(spec, pts);
}

/// k3^2 + (2n+1)|e B0|
inline double landau_energy(double B0, double e, double k1, double k3, int n) {
  (void)k1;
  if (n < 0) throw DomainError(detail::concat("Landau level index must be >= 0, got ", n));
  return k3 * k3 + (2.0 * n + 1.0) * std::abs(e * B0);
}

/// landau_energy + k1 E0/B0 - E0^2/(4 B0^2)
inline double landau_energy_with_field(double B0, double e, double E0_field, double k1, double k3, int n) {
  if (B0 == 0.0) throw DomainError("singular configuration: the electric-field shift divides by B0 = 0");
  return landau_energy(B0, e, k1, k3, n) + k1 * E0_field / B0 - E0_field * E0_field / (4 * B0 * B0);
}

/// Normalized Hermite function psi_n(xi) = (2^n n! sqrt(pi))^(-1/2) H_n(xi) e^(-xi^2/2),
/// by the normalized three-term recurrence with a running log scale.
inline double hermite_function(int n, double xi) {
  if (n < 0) throw DomainError("Hermite index must be >= 0");
  double prev = 0.0;
  double cur = 1.0;  // psi_0 up to the factor exp(log_scale)
  double log_scale = -0.25 * std::log(std::numbers::pi) - 0.5 * xi * xi;
  for (int k = 0; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * xi * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
    const double mag = std::abs(cur);
    if (mag > 1e100 || (mag < 1e-100 && mag > 0)) {
      log_scale += std::log(mag);
      prev /= mag;
      cur /= mag;
    }
  }
  return cur * std::exp(log_scale);
}

enum class ShiftedCoordinate { zeta, eta };

inline const char* to_string(ShiftedCoordinate s) { return s == ShiftedCoordinate::zeta ? "zeta" : "eta"; }

struct LandauSolution {
  int n = 0;
  double B0 = 1, e = 1, k1 = 0, k3 = 0, E0_field = 0;
  double energy = 0;
  ShiftedCoordinate shifted_coordinate = ShiftedCoordinate::zeta;

  /// q2 at which the shifted coordinate vanishes.
  double center() const {
    const double c = -k1 / (e * B0);
    return shifted_coordinate == ShiftedCoordinate::eta ? c + E0_field / (2 * e * B0 * B0) : c;
  }
  double length() const { return 1.0 / std::sqrt(std::abs(e * B0)); }

  /// Normalized transverse factor Y_n(q2).
  double Y(double q2) const {
    const double w = std::abs(e * B0);
    return std::pow(w, 0.25) * hermite_function(n, std::sqrt(w) * (q2 - center()));
  }

  /// Plane waves in q1, q3 times Y_n(q2).
  complex psi(Vec3 const& q) const { return std::exp(complex{0.0, k1 * q[0] + k3 * q[2]}) * Y(q[1]); }
};

inline LandauSolution make_landau_solution(double B0, double e, double E0_field, double k1, double k3, int n) {
  if (B0 == 0.0 || e == 0.0) throw DomainError("Landau problem needs nonzero e and B0");
  LandauSolution s;
  s.n = n;
  s.B0 = B0;
  s.e = e;
  s.k1 = k1;
  s.k3 = k3;
  s.E0_field = E0_field;
  s.shifted_coordinate = E0_field != 0.0 ? ShiftedCoordinate::eta : ShiftedCoordinate::zeta;
  s.energy = E0_field != 0.0 ? landau_energy_with_field(B0, e, E0_field, k1, k3, n) : landau_energy(B0, e, k1, k3, n);
  return s;
}

struct LandauNumericOptions {
  std::size_t n_points = 4001;
  double half_width = 12.0;  // in oscillator lengths, around the orbit centre
  std::optional<std::pair<double, double>> q2_domain;
  bool richardson = true;
};

struct LandauNumericResult {
  SpectrumResult spectrum;  // energies after undoing the completed square
  std::vector<double> analytic;
  std::vector<double> rel_errors;
  std::vector<double> overlaps;  // |<Y_numeric, Y_analytic>|
  double max_rel_error = 0;
  double q2_lo = 0, q2_hi = 0;
};

/// Discretizes -d^2/dq2^2 + e^2 B0^2 (q2 - centre)^2 + k3^2 and maps the levels
/// back through the electric-field energy shift.
inline LandauNumericResult solve_example_numeric(double B0, double e, double E0_field, double k1, double k3, std::size_t k,
                                                 LandauNumericOptions const& opt = {}) {
  if (opt.n_points < 16) throw ValidationError("Landau solve needs at least 16 grid points");
  const auto base = make_landau_solution(B0, e, E0_field, k1, k3, 0);
  const double centre = base.center();
  const double ell = base.length();
  LandauNumericResult out;
  out.q2_lo = opt.q2_domain ? opt.q2_domain->first : centre - opt.half_width * ell;
  out.q2_hi = opt.q2_domain ? opt.q2_domain->second : centre + opt.half_width * ell;
  const double w2 = e * e * B0 * B0;
  PotentialSpec V;
  V.V = [=](double q) { return w2 * (q - centre) * (q - centre) + k3 * k3; };
  V.tag = "landau-oscillator";
  const double shift = E0_field != 0.0 ? k1 * E0_field / B0 - E0_field * E0_field / (4 * B0 * B0) : 0.0;

  auto solve = [&](std::size_t n, bool vectors) {
    const auto grid = uniform_grid(out.q2_lo, out.q2_hi, n);
    return solve_symmetric(build_von_roos(constant_mass(), V, OrderingParams::mm_ordering(), grid), k, vectors);
  };
  out.spectrum = solve(opt.n_points, true);
  if (opt.richardson && opt.n_points % 2 == 1) {
    const auto coarse = solve((opt.n_points + 1) / 2, false);
    out.spectrum.eigenvalues = richardson(coarse.eigenvalues, out.spectrum.eigenvalues);
  }
  for (double& E : out.spectrum.eigenvalues) E += shift;

  for (std::size_t j = 0; j < k; ++j) {
    const auto sol = make_landau_solution(B0, e, E0_field, k1, k3, static_cast<int>(j));
    out.analytic.push_back(sol.energy);
    const double E = out.spectrum.eigenvalues[j];
    out.rel_errors.push_back(std::abs(E - sol.energy) / std::abs(sol.energy));
    auto const& v = out.spectrum.eigenvectors[j];
    std::vector<double> prod(v.grid.size());
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = v.values[i].real() * sol.Y(v.grid[i]);
    out.overlaps.push_back(std::abs(numerics::integrate<double>(v.grid, prod)));
  }
  for (double r : out.rel_errors) out.max_rel_error = std::max(out.max_rel_error, r);
  return out;
}

/// phi(x) = m(r)^(1/4) psi(q(x)) with q = (S/sqrt(m)) x.
inline std::vector<complex> build_pdm_eigenfunction(LandauSolution const& sol, MassProfile const& m, ScalarMultiplier const& S,
                                                    std::span<const Vec3> points) {
  const auto qs = radial_map(S, m, points);
  std::vector<complex> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = std::pow(m.checked(norm(points[i])), 0.25) * sol.psi(qs[i]);
  return out;
}

}  // namespace pdm
