#pragma once

// Mass profiles m, scalar multipliers S, the generating relation linking a
// radial pair (m, S), and the closed-form catalog of generating pairs.
//
// Units: hbar = 2 m0 = c = 1; m is the dimensionless multiplier of the rest mass.

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "pdm/core.hpp"
#include "pdm/jet.hpp"
#include "pdm/numerics.hpp"

namespace pdm {

enum class ProfileKind { analytic_catalog, tabulated, custom };

inline const char* to_string(ProfileKind k) {
  switch (k) {
    case ProfileKind::analytic_catalog: return "analytic-catalog";
    case ProfileKind::tabulated: return "tabulated";
    case ProfileKind::custom: return "custom";
  }
  return "?";
}

using ParamMap = std::map<std::string, double>;

/// Positive dimensionless mass multiplier with first and second derivatives.
/// For radial profiles the argument is r = |x|.
struct MassProfile {
  std::function<double(double)> m;
  std::function<double(double)> d_m;
  std::function<double(double)> dd_m;
  ProfileKind kind = ProfileKind::custom;
  std::string tag;
  ParamMap params;
  bool radial = false;
  // Filled for tabulated profiles only.
  std::vector<double> table_x, table_y;

  double operator()(double x) const { return m(x); }

  bool is_constant() const { return tag == "constant"; }

  /// Value at x; throws DomainError when m(x) <= 0 or not finite.
  double checked(double x) const {
    const double v = m(x);
    if (!(v > 0) || !std::isfinite(v)) throw DomainError(detail::concat("mass profile '", tag, "' is not positive at x=", x, " (m=", v, ")"));
    return v;
  }
};

/// Scalar multiplier S(r) of the vector potential, with first derivative.
struct ScalarMultiplier {
  std::function<double(double)> S;
  std::function<double(double)> d_S;
  ProfileKind kind = ProfileKind::custom;
  std::string tag;
  ParamMap params;
  std::vector<double> singular_points;
  std::vector<double> table_x, table_y;

  double operator()(double r) const { return S(r); }

  bool singular_at(double r) const {
    for (double s : singular_points)
      if (std::abs(r - s) <= 1e-14 * std::max(1.0, std::abs(s))) return true;
    return false;
  }
};

/// Builds an analytic profile from a generic expression evaluated on jets.
template <class F>
MassProfile make_mass(std::string tag, ParamMap params, F expr, bool radial = false) {
  auto fn = std::make_shared<F>(std::move(expr));
  MassProfile p;
  p.m = [fn](double x) { return (*fn)(Jet{x}).v; };
  p.d_m = [fn](double x) { return (*fn)(Jet::variable(x)).d; };
  p.dd_m = [fn](double x) { return (*fn)(Jet::variable(x)).dd; };
  p.kind = ProfileKind::analytic_catalog;
  p.tag = std::move(tag);
  p.params = std::move(params);
  p.radial = radial;
  return p;
}

template <class F>
ScalarMultiplier make_scalar(std::string tag, ParamMap params, F expr, std::vector<double> singular = {}) {
  auto fn = std::make_shared<F>(std::move(expr));
  ScalarMultiplier s;
  s.S = [fn](double r) { return (*fn)(Jet{r}).v; };
  s.d_S = [fn](double r) { return (*fn)(Jet::variable(r)).d; };
  s.kind = ProfileKind::analytic_catalog;
  s.tag = std::move(tag);
  s.params = std::move(params);
  s.singular_points = std::move(singular);
  return s;
}

inline MassProfile constant_mass(double value = 1.0, bool radial = false) {
  if (!(value > 0)) throw ValidationError(detail::concat("constant mass must be positive, got ", value));
  MassProfile p;
  p.m = [value](double) { return value; };
  p.d_m = [](double) { return 0.0; };
  p.dd_m = [](double) { return 0.0; };
  p.kind = ProfileKind::analytic_catalog;
  p.tag = "constant";
  p.params = {{"value", value}};
  p.radial = radial;
  return p;
}

/// m(x) = 1/(1+(x/a)^2)^2, for which q(x) = a*atan(x/a).
inline MassProfile lorentzian_squared_mass(double a = 1.0) {
  if (!(a > 0)) throw ValidationError("lorentzian-squared width must be positive");
  return make_mass("lorentzian-squared", {{"a", a}}, [a](auto x) {
    auto u = x / a;
    auto w = 1.0 + u * u;
    return 1.0 / (w * w);
  });
}

/// m(x) = exp(-x^2/width).
inline MassProfile gaussian_mass(double width = 10.0) {
  if (!(width > 0)) throw ValidationError("gaussian mass width must be positive");
  return make_mass("gaussian", {{"width", width}}, [width](auto x) { return exp(-(x * x) / width); });
}

/// m(x) = base + amplitude*tanh(x/width); requires |amplitude| < base.
inline MassProfile tanh_step_mass(double base = 2.0, double amplitude = 1.0, double width = 1.0) {
  if (!(base > std::abs(amplitude)) || !(width > 0))
    throw ValidationError("tanh-step mass needs base > |amplitude| and width > 0");
  return make_mass("tanh-step", {{"base", base}, {"amplitude", amplitude}, {"width", width}},
                   [=](auto x) { return base + amplitude * tanh(x / width); });
}

namespace detail {

struct TabulatedDerivs {
  std::vector<double> d1, d2;
};

inline TabulatedDerivs tabulated_derivatives(std::span<const double> x, std::span<const double> y, std::size_t order) {
  // order 2: centred 3-point first derivative (one-sided at ends), 4-point second.
  // order 4: 5-point first derivative, 6-point second derivative.
  TabulatedDerivs d;
  d.d1 = numerics::stencil_derivative(x, y, 1, order == 4 ? 5 : 3);
  d.d2 = numerics::stencil_derivative(x, y, 2, order == 4 ? 6 : 4);
  return d;
}

}  // namespace detail

/// Tabulated mass: cubic Hermite values, derivatives by centred differences.
inline MassProfile tabulated_mass(std::vector<double> x, std::vector<double> y, bool radial = false,
                                  std::size_t derivative_order = 2) {
  if (x.size() != y.size() || x.size() < 6) throw ValidationError("tabulated mass needs >= 6 (x, m) pairs of equal length");
  if (!is_ascending(x)) throw ValidationError("tabulated mass abscissae must be strictly ascending");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!(y[i] > 0)) throw DomainError(detail::concat("tabulated mass is not positive at x=", x[i]));
  auto d = detail::tabulated_derivatives(x, y, derivative_order);
  auto value = std::make_shared<numerics::CubicHermite>(x, y, d.d1);
  auto first = std::make_shared<numerics::CubicHermite>(x, d.d1, d.d2);
  auto xs = std::make_shared<std::vector<double>>(x);
  auto d2 = std::make_shared<std::vector<double>>(d.d2);
  MassProfile p;
  p.m = [value](double t) { return (*value)(t); };
  p.d_m = [first](double t) { return (*first)(t); };
  p.dd_m = [xs, d2](double t) {
    const std::size_t k = numerics::locate(*xs, t);
    const double u = (t - (*xs)[k]) / ((*xs)[k + 1] - (*xs)[k]);
    return (1 - u) * (*d2)[k] + u * (*d2)[k + 1];
  };
  p.kind = ProfileKind::tabulated;
  p.tag = "tabulated";
  p.radial = radial;
  p.table_x = std::move(x);
  p.table_y = std::move(y);
  return p;
}

inline ScalarMultiplier tabulated_scalar(std::vector<double> r, std::vector<double> s) {
  if (r.size() != s.size() || r.size() < 6) throw ValidationError("tabulated scalar needs >= 6 (r, S) pairs of equal length");
  if (!is_ascending(r)) throw ValidationError("tabulated scalar radii must be strictly ascending");
  auto d = detail::tabulated_derivatives(r, s, 4);
  auto value = std::make_shared<numerics::CubicHermite>(r, s, d.d1);
  auto first = std::make_shared<numerics::CubicHermite>(r, d.d1, d.d2);
  ScalarMultiplier out;
  out.S = [value](double t) { return (*value)(t); };
  out.d_S = [first](double t) { return (*first)(t); };
  out.kind = ProfileKind::tabulated;
  out.tag = "tabulated";
  out.table_x = std::move(r);
  out.table_y = std::move(s);
  return out;
}

/// Two-column CSV (abscissa, value); header optional, '#' comments ignored.
inline std::pair<std::vector<double>, std::vector<double>> read_two_column_csv(std::string const& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open profile CSV '" + path + "'");
  std::vector<double> x, y;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1 && line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF) line.erase(0, 3);  // BOM
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ValidationError(detail::concat(path, ":", lineno, ": expected two comma-separated columns"));
    try {
      std::size_t used = 0;
      const double a = std::stod(line.substr(0, comma), &used);
      const double b = std::stod(line.substr(comma + 1));
      x.push_back(a);
      y.push_back(b);
    } catch (std::invalid_argument const&) {
      if (x.empty()) continue;  // header row
      throw ValidationError(detail::concat(path, ":", lineno, ": non-numeric value"));
    }
  }
  return {std::move(x), std::move(y)};
}

// ---------------------------------------------------------------------------
// Generating relation between a radial mass and its scalar multiplier:
//   m = S [1 + (r/N)(S'/S - m'/(2m))]  <=>  S = N sqrt(m) r^-N (Int r^(N-1) sqrt(m) dr + c0)

/// Pointwise residual of the left identity, written without dividing by S.
inline double generating_relation_residual(double r, int N, double m, double dm, double S, double dS) {
  return m - S - (r / N) * (dS - S * dm / (2 * m));
}

enum class PairTag { s_unity, s_equals_m, s_power_b, s_power_law_nu, m_quadratic, m_power_2b, m_rational };

inline const char* to_string(PairTag t) {
  switch (t) {
    case PairTag::s_unity: return "S-unity";
    case PairTag::s_equals_m: return "S-equals-m";
    case PairTag::s_power_b: return "S-power-b";
    case PairTag::s_power_law_nu: return "S-power-law-nu";
    case PairTag::m_quadratic: return "m-quadratic";
    case PairTag::m_power_2b: return "m-power-2b";
    case PairTag::m_rational: return "m-rational";
  }
  return "?";
}

inline std::vector<std::string> pair_tag_names() {
  return {"S-unity", "S-equals-m", "S-power-b", "S-power-law-nu", "m-quadratic", "m-power-2b", "m-rational"};
}

struct PairCatalogEntry {
  PairTag tag;
  int N = 3;
  ParamMap params;
  MassProfile mass;
  ScalarMultiplier scalar;

  /// Integration constant that makes scalar_from_mass with
  /// IntegralOrigin::first_radius, started at r_start, reproduce this entry's
  /// closed-form S.
  double c0_for(double r_start) const {
    return scalar(r_start) * std::pow(r_start, N) / (N * std::sqrt(mass(r_start)));
  }

  bool constant_mass() const { return tag == PairTag::s_equals_m; }
};

namespace catalog {

inline void check_n(int N) {
  if (N < 1) throw ValidationError(detail::concat("degrees of freedom N must be positive, got ", N));
}

/// S = 1  <=>  m = 1/(1 + lambda r^(-2N)).
inline PairCatalogEntry s_unity(double lambda = 1.0, int N = 3) {
  check_n(N);
  if (!(lambda >= 0)) throw ValidationError("S-unity needs lambda >= 0");
  PairCatalogEntry e{PairTag::s_unity, N, {{"lambda", lambda}}, {}, {}};
  e.mass = make_mass("S-unity", e.params, [=](auto r) { return 1.0 / (1.0 + lambda * pow(r, -2.0 * N)); }, true);
  e.scalar = make_scalar("S-unity", e.params, [](auto) { return Jet{1.0}; });
  return e;
}

/// S = m  <=>  m = const.
inline PairCatalogEntry s_equals_m(double value = 1.0, int N = 3) {
  check_n(N);
  PairCatalogEntry e{PairTag::s_equals_m, N, {{"value", value}}, constant_mass(value, true), {}};
  e.scalar = make_scalar("S-equals-m", e.params, [=](auto) { return Jet{value}; });
  return e;
}

/// S = m^b  <=>  m = [1 + lambda r^(-2N(b-1)/(2b-1))]^(1/(b-1)), b != 1, b != 1/2.
/// Restricted to lambda > 0 so the base stays positive for every r > 0.
inline PairCatalogEntry s_power_b(double b = 2.0, double lambda = 1.0, int N = 3) {
  check_n(N);
  if (b == 1.0 || b == 0.5) throw ValidationError("S-power-b needs b != 1 and b != 1/2");
  if (!(lambda > 0)) throw ValidationError("S-power-b is restricted to lambda > 0 (positive base)");
  const double k = -2.0 * N * (b - 1) / (2 * b - 1);
  PairCatalogEntry e{PairTag::s_power_b, N, {{"b", b}, {"lambda", lambda}}, {}, {}};
  auto m_expr = [=](auto r) { return pow(1.0 + lambda * pow(r, k), 1.0 / (b - 1)); };
  e.mass = make_mass("S-power-b", e.params, m_expr, true);
  e.scalar = make_scalar("S-power-b", e.params, [=](auto r) { return pow(m_expr(r), b); }, {0.0});
  return e;
}

/// S = lambda r^nu  <=>  m = (2N+nu) lambda / [(2N+nu) lambda r^(-2(N+nu)) + 2N r^(-nu)].
inline PairCatalogEntry s_power_law_nu(double lambda = 1.0, double nu = 1.0, int N = 3) {
  check_n(N);
  if (!(lambda > 0) || !(2 * N + nu > 0)) throw ValidationError("S-power-law-nu needs lambda > 0 and 2N + nu > 0");
  PairCatalogEntry e{PairTag::s_power_law_nu, N, {{"lambda", lambda}, {"nu", nu}}, {}, {}};
  const double c = (2 * N + nu) * lambda;
  e.mass = make_mass("S-power-law-nu", e.params,
                     [=](auto r) { return c / (c * pow(r, -2.0 * (N + nu)) + 2.0 * N * pow(r, -nu)); }, true);
  e.scalar = make_scalar("S-power-law-nu", e.params, [=](auto r) { return lambda * pow(r, nu); }, {0.0});
  return e;
}

/// m = lambda r^2  <=>  S = N lambda r^2/(N+1).
inline PairCatalogEntry m_quadratic(double lambda = 1.0, int N = 3) {
  check_n(N);
  if (!(lambda > 0)) throw ValidationError("m-quadratic needs lambda > 0");
  PairCatalogEntry e{PairTag::m_quadratic, N, {{"lambda", lambda}}, {}, {}};
  e.mass = make_mass("m-quadratic", e.params, [=](auto r) { return lambda * r * r; }, true);
  e.scalar = make_scalar("m-quadratic", e.params, [=](auto r) { return (N * lambda / (N + 1.0)) * r * r; });
  return e;
}

/// m = lambda r^(2b)  <=>  S = N lambda r^(2b)/(N+b).
inline PairCatalogEntry m_power_2b(double lambda = 1.0, double b = 1.5, int N = 3) {
  check_n(N);
  if (!(lambda > 0) || N + b == 0) throw ValidationError("m-power-2b needs lambda > 0 and N + b != 0");
  PairCatalogEntry e{PairTag::m_power_2b, N, {{"lambda", lambda}, {"b", b}}, {}, {}};
  e.mass = make_mass("m-power-2b", e.params, [=](auto r) { return lambda * pow(r, 2 * b); }, true);
  e.scalar = make_scalar("m-power-2b", e.params, [=](auto r) { return (N * lambda / (N + b)) * pow(r, 2 * b); });
  return e;
}

/// m = 1/(1 + alpha r^N)  <=>  S = (2/alpha) r^-N.
inline PairCatalogEntry m_rational(double alpha = 2.0, int N = 3) {
  check_n(N);
  if (!(alpha > 0)) throw ValidationError("m-rational needs alpha > 0");
  PairCatalogEntry e{PairTag::m_rational, N, {{"alpha", alpha}}, {}, {}};
  e.mass = make_mass("m-rational", e.params, [=](auto r) { return 1.0 / (1.0 + alpha * pow(r, double(N))); }, true);
  e.scalar = make_scalar("m-rational", e.params, [=](auto r) { return (2.0 / alpha) * pow(r, -double(N)); }, {0.0});
  return e;
}

/// Entry by tag name with parameters (missing parameters take the defaults above).
inline PairCatalogEntry by_name(std::string const& tag, ParamMap const& p, int N = 3) {
  auto get = [&](char const* k, double def) {
    auto it = p.find(k);
    return it == p.end() ? def : it->second;
  };
  if (tag == "S-unity") return s_unity(get("lambda", 1.0), N);
  if (tag == "S-equals-m") return s_equals_m(get("value", 1.0), N);
  if (tag == "S-power-b") return s_power_b(get("b", 2.0), get("lambda", 1.0), N);
  if (tag == "S-power-law-nu") return s_power_law_nu(get("lambda", 1.0), get("nu", 1.0), N);
  if (tag == "m-quadratic") return m_quadratic(get("lambda", 1.0), N);
  if (tag == "m-power-2b") return m_power_2b(get("lambda", 1.0), get("b", 1.5), N);
  if (tag == "m-rational") return m_rational(get("alpha", 2.0), N);
  std::string valid;
  for (auto const& n : pair_tag_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw ValidationError("unknown catalog tag '" + tag + "'; valid tags: " + valid);
}

/// Every catalog entry with default parameters.
inline std::vector<PairCatalogEntry> all(int N = 3) {
  return {s_unity(1.0, N),      s_equals_m(1.0, N), s_power_b(2.0, 1.0, N), s_power_law_nu(1.0, 1.0, N),
          m_quadratic(1.0, N),  m_power_2b(1.0, 1.5, N), m_rational(2.0, N)};
}

}  // namespace catalog

enum class IntegralOrigin { zero, first_radius };

namespace detail {

/// Integral of f over (0, b] on panels graded geometrically towards 0, eight
/// Gauss-Legendre nodes each; tolerates integrable algebraic behaviour at 0.
template <class F>
double integrate_from_origin(F const& f, double b) {
  static constexpr double x[4] = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267, 0.9602898564975363};
  static constexpr double w[4] = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};
  auto panel = [&](double lo, double hi) {
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    double acc = 0;
    for (int i = 0; i < 4; ++i) acc += w[i] * (f(c - h * x[i]) + f(c + h * x[i]));
    return acc * h;
  };
  double total = 0, hi = b;
  for (int k = 0; k < 60; ++k) {
    const double lo = 0.5 * hi;
    total += panel(lo, hi);
    hi = lo;
  }
  return total + panel(0.0, hi);
}

}  // namespace detail

/// S on r_grid from a radial mass,
///   S = N sqrt(m) r^(-N) [Int r^(N-1) sqrt(m) dr + c0],
/// by cumulative Simpson quadrature over the grid. With IntegralOrigin::zero
/// the integral runs from r = 0 (the piece below the first radius is taken by
/// Gauss-Legendre on the mass evaluator); with first_radius it starts at the
/// first grid point.
inline ScalarMultiplier scalar_from_mass(MassProfile const& m, int N, std::span<const double> r_grid, double c0,
                                         IntegralOrigin origin = IntegralOrigin::zero) {
  catalog::check_n(N);
  if (!m.radial) throw DomainError("scalar_from_mass needs a radial mass profile");
  if (r_grid.size() < 6) throw ValidationError("scalar_from_mass needs at least 6 radii");
  if (!is_ascending(r_grid)) throw ValidationError("radial grid must be strictly ascending");
  if (!(r_grid.front() > 0)) throw DomainError(detail::concat("radial grid must be strictly positive, first radius ", r_grid.front()));
  std::vector<double> sqrt_m(r_grid.size()), integrand(r_grid.size());
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    sqrt_m[i] = std::sqrt(m.checked(r_grid[i]));
    integrand[i] = std::pow(r_grid[i], N - 1) * sqrt_m[i];
  }
  double head = 0;
  if (origin == IntegralOrigin::zero) {
    head = detail::integrate_from_origin([&](double r) { return std::pow(r, N - 1) * std::sqrt(m.checked(r)); }, r_grid.front());
    if (!std::isfinite(head)) throw DomainError("integral from r=0 diverges for this mass; use IntegralOrigin::first_radius");
  }
  const auto I = numerics::cumulative_simpson<double>(r_grid, integrand);
  std::vector<double> S(r_grid.size());
  for (std::size_t i = 0; i < r_grid.size(); ++i) S[i] = N * sqrt_m[i] * std::pow(r_grid[i], -N) * (head + I[i] + c0);
  auto out = tabulated_scalar({r_grid.begin(), r_grid.end()}, std::move(S));
  out.params = {{"N", double(N)}, {"c0", c0}};
  return out;
}

namespace detail {

// Classical RK4 for y' = f(r, y) over the nodes of r_grid, starting from
// (r0, y0) and sweeping outwards in both directions, with `substeps` equal
// steps per grid interval.
template <class F>
std::vector<double> rk4_on_grid(F const& f, double r0, double y0, std::span<const double> r_grid, int substeps = 1) {
  const std::size_t n = r_grid.size();
  if (r0 < r_grid.front() || r0 > r_grid.back())
    throw ValidationError(detail::concat("initial radius ", r0, " outside grid [", r_grid.front(), ", ", r_grid.back(), "]"));
  auto single = [&](double ra, double ya, double rb) {
    const double h = rb - ra;
    const double k1 = f(ra, ya);
    const double k2 = f(ra + h / 2, ya + h / 2 * k1);
    const double k3 = f(ra + h / 2, ya + h / 2 * k2);
    const double k4 = f(rb, ya + h * k3);
    const double yb = ya + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    if (!std::isfinite(yb))
      throw NumericalError(concat("ODE integration failed stepping from r=", ra, " to r=", rb, "; last good radius ", ra));
    return yb;
  };
  auto step = [&](double ra, double ya, double rb) {
    const double h = (rb - ra) / substeps;
    for (int s = 0; s < substeps; ++s) ya = single(ra + s * h, ya, s + 1 == substeps ? rb : ra + (s + 1) * h);
    return ya;
  };
  std::vector<double> y(n);
  std::size_t k = static_cast<std::size_t>(std::lower_bound(r_grid.begin(), r_grid.end(), r0) - r_grid.begin());
  // forward
  double ra = r0, ya = y0;
  for (std::size_t i = k; i < n; ++i) {
    ya = r_grid[i] == ra ? ya : step(ra, ya, r_grid[i]);
    ra = r_grid[i];
    y[i] = ya;
  }
  ra = r0;
  ya = y0;
  for (std::size_t i = k; i-- > 0;) {
    ya = step(ra, ya, r_grid[i]);
    ra = r_grid[i];
    y[i] = ya;
  }
  return y;
}

}  // namespace detail

/// m on r_grid from S by integrating the generating relation as an ODE. With
/// u = ln m - 2 ln S it reads u' = -(2N/r)(S e^u - 1), which needs S but not S',
/// so a tabulated S loses no accuracy to differentiation. m(r0) = m0.
inline MassProfile mass_from_scalar(ScalarMultiplier const& S, int N, double r0, double m0, std::span<const double> r_grid,
                                    int substeps = 4) {
  catalog::check_n(N);
  if (!(m0 > 0)) throw ValidationError("initial mass m0 must be positive");
  if (substeps < 1) throw ValidationError("substeps must be positive");
  if (!is_ascending(r_grid) || !(r_grid.front() > 0)) throw DomainError("radial grid must be positive and ascending");
  for (double r : r_grid)
    if (S(r) == 0.0 || S.singular_at(r)) throw NumericalError(detail::concat("singular coefficient: S vanishes or is singular at r=", r));
  auto rhs = [&](double r, double u) {
    const double s = S(r);
    if (s == 0.0) throw NumericalError(detail::concat("singular coefficient: S(", r, ") = 0"));
    return -(2.0 * N / r) * (s * std::exp(u) - 1);
  };
  const double s0 = S(r0);
  auto u = detail::rk4_on_grid(rhs, r0, std::log(m0) - 2 * std::log(std::abs(s0)), r_grid, substeps);
  std::vector<double> m(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double s = S(r_grid[i]);
    m[i] = s * s * std::exp(u[i]);
  }
  auto out = tabulated_mass({r_grid.begin(), r_grid.end()}, std::move(m), true);
  out.params = {{"N", double(N)}, {"r0", r0}, {"m0", m0}};
  return out;
}

/// Self-consistent branch S = m^b of the generating relation:
///   (2b - 1)(ln m)' = (2N/r)(m^(1-b) - 1);  b = 1 gives a constant mass.
inline MassProfile mass_from_scalar_power(double b, int N, double r0, double m0, std::span<const double> r_grid) {
  catalog::check_n(N);
  if (b == 0.5) throw ValidationError("S = m^b branch is degenerate at b = 1/2");
  if (!(m0 > 0)) throw ValidationError("initial mass m0 must be positive");
  if (!is_ascending(r_grid) || !(r_grid.front() > 0)) throw DomainError("radial grid must be positive and ascending");
  auto rhs = [&](double r, double y) { return (2.0 * N / r) * (std::exp((1 - b) * y) - 1) / (2 * b - 1); };
  auto y = detail::rk4_on_grid(rhs, r0, std::log(m0), r_grid);
  std::vector<double> m(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) m[i] = std::exp(y[i]);
  auto out = tabulated_mass({r_grid.begin(), r_grid.end()}, std::move(m), true);
  out.params = {{"N", double(N)}, {"b", b}, {"r0", r0}, {"m0", m0}};
  return out;
}

struct PairResidualReport {
  std::string tag;
  double max_residual = 0;
  double worst_radius = 0;
  std::vector<double> skipped;
  double tol = 0;
  bool passed = true;
};

/// Max |m - S[1 + (r/N)(S'/S - m'/2m)]| of a catalog entry over r_grid.
inline PairResidualReport verify_pair(PairCatalogEntry const& e, std::span<const double> r_grid, double tol = 1e-8) {
  PairResidualReport rep;
  rep.tag = to_string(e.tag);
  rep.tol = tol;
  for (double r : r_grid) {
    if (!(r > 0) || e.scalar.singular_at(r)) {
      rep.skipped.push_back(r);
      continue;
    }
    const double res = std::abs(
        generating_relation_residual(r, e.N, e.mass.m(r), e.mass.d_m(r), e.scalar.S(r), e.scalar.d_S(r)));
    if (!std::isfinite(res)) {
      rep.skipped.push_back(r);
      continue;
    }
    if (res >= rep.max_residual) {
      rep.max_residual = res;
      rep.worst_radius = r;
    }
  }
  rep.passed = rep.max_residual <= tol;
  return rep;
}

/// 1D profile tags accepted by mass_by_name besides the catalog pair tags.
inline std::vector<std::string> profile_tag_names() { return {"constant", "lorentzian-squared", "gaussian", "tanh-step"}; }

/// Profile by tag; catalog pair tags return the pair's radial mass.
inline MassProfile mass_by_name(std::string const& tag, ParamMap const& p, int N = 3) {
  auto get = [&](char const* k, double def) {
    auto it = p.find(k);
    return it == p.end() ? def : it->second;
  };
  if (tag == "constant") return constant_mass(get("value", 1.0));
  if (tag == "lorentzian-squared") return lorentzian_squared_mass(get("a", 1.0));
  if (tag == "gaussian") return gaussian_mass(get("width", 10.0));
  if (tag == "tanh-step") return tanh_step_mass(get("base", 2.0), get("amplitude", 1.0), get("width", 1.0));
  for (auto const& n : pair_tag_names())
    if (n == tag) return catalog::by_name(tag, p, N).mass;
  std::string valid;
  for (auto const& n : profile_tag_names()) valid += n + ", ";
  for (auto const& n : pair_tag_names()) valid += n + (n == pair_tag_names().back() ? "" : ", ");
  throw ValidationError("unknown mass tag '" + tag + "'; valid tags: " + valid);
}

}  // namespace pdm
