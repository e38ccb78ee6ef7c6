#pragma once

// Finite-difference operators on uniform 1D grids with Dirichlet walls: the
// von Roos Hamiltonian for any ordering, its fixed-ordering reduction, the PDM
// pseudo-momentum pi and the PDM momentum P = sqrt(m) pi.
//
// Matrices act on the interior nodes x_1 .. x_{n-2}; the end nodes carry the
// homogeneous Dirichlet condition.

#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "pdm/banded_matrix.hpp"
#include "pdm/core.hpp"
#include "pdm/mass_models.hpp"
#include "pdm/point_transform.hpp"

namespace pdm {

/// Ordering parameters of the von Roos kinetic term, alpha + beta + gamma = -1.
class OrderingParams {
 public:
  OrderingParams(double alpha, double beta, double gamma) : alpha_(alpha), beta_(beta), gamma_(gamma) {
    if (alpha + beta + gamma != -1.0)
      throw ValidationError(detail::concat("ordering parameters must satisfy alpha+beta+gamma=-1, got (", alpha, ", ", beta, ", ", gamma, ")"));
  }

  static OrderingParams mm_ordering() { return {-0.25, -0.5, -0.25}; }
  static OrderingParams bendaniel_duke() { return {0.0, -1.0, 0.0}; }
  static OrderingParams gora_williams() { return {-1.0, 0.0, 0.0}; }
  static OrderingParams zhu_kroemer() { return {-0.5, 0.0, -0.5}; }

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double gamma() const { return gamma_; }

  /// Coefficient of (m')^2/m^3: alpha(alpha+beta+1) + beta + 1.
  double gradient_squared_coefficient() const { return alpha_ * (alpha_ + beta_ + 1) + beta_ + 1; }
  /// Coefficient of m''/m^2: (1+beta)/2.
  double curvature_coefficient() const { return 0.5 * (1 + beta_); }

 private:
  double alpha_, beta_, gamma_;
};

struct NamedOrdering {
  std::string name;
  OrderingParams params;
};

inline std::optional<OrderingParams> ordering_by_name(std::string const& name) {
  if (name == "mm") return OrderingParams::mm_ordering();
  if (name == "bdd" || name == "bendaniel-duke") return OrderingParams::bendaniel_duke();
  if (name == "gora-williams") return OrderingParams::gora_williams();
  if (name == "zhu-kroemer") return OrderingParams::zhu_kroemer();
  return std::nullopt;
}

/// W = e*phi_scalar + V on the real line.
struct PotentialSpec {
  std::function<double(double)> V = [](double) { return 0.0; };
  std::function<double(double)> e_phi;  // optional scalar electromagnetic part
  std::string tag = "none";

  double W(double x) const { return V(x) + (e_phi ? e_phi(x) : 0.0); }
  double operator()(double x) const { return W(x); }

  static PotentialSpec none() { return {}; }
  /// omega^2 (q - center)^2
  static PotentialSpec harmonic(double omega = 1.0, double center = 0.0) {
    PotentialSpec p;
    p.V = [=](double q) { return omega * omega * (q - center) * (q - center); };
    p.tag = "harmonic";
    return p;
  }
  /// Flat potential; confinement comes from the Dirichlet walls.
  static PotentialSpec box() {
    PotentialSpec p;
    p.tag = "box";
    return p;
  }
};

/// Potential given in q, pulled back to x through the map: W(x) = W_q(q(x)).
inline PotentialSpec compose_with_map(PotentialSpec const& in_q, TransformMap const& map) {
  PotentialSpec out;
  out.V = [in_q, map](double x) { return in_q.W(map.q_at(x)); };
  out.tag = in_q.tag + "(q(x))";
  return out;
}

enum class HermitianUnder { dx, weighted, none };

inline const char* to_string(HermitianUnder h) {
  switch (h) {
    case HermitianUnder::dx: return "dx";
    case HermitianUnder::weighted: return "weighted";
    case HermitianUnder::none: return "none";
  }
  return "?";
}

template <class T>
struct DiscretizedOperator {
  std::vector<double> grid;  // full grid, walls included
  BandedMatrix<T> matrix;    // interior nodes
  HermitianUnder hermitian_under = HermitianUnder::none;
  std::vector<double> weight;      // interior weights when hermitian_under == weighted
  std::vector<double> similarity;  // s with matrix = diag(s) A diag(1/s), after symmetrize
  std::string label;

  double spacing() const { return (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1); }
  std::size_t interior_size() const { return grid.size() - 2; }
  std::span<const double> interior() const { return std::span<const double>(grid).subspan(1, grid.size() - 2); }
};

using RealOperator = DiscretizedOperator<double>;
using ComplexOperator = DiscretizedOperator<complex>;

namespace detail {

struct MassSamples {
  std::vector<double> m, dm, ddm;
};

inline MassSamples sample_mass(MassProfile const& mass, std::span<const double> nodes) {
  MassSamples s;
  s.m.resize(nodes.size());
  s.dm.resize(nodes.size());
  s.ddm.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    s.m[i] = mass.checked(nodes[i]);
    s.dm[i] = mass.d_m(nodes[i]);
    s.ddm[i] = mass.dd_m(nodes[i]);
  }
  return s;
}

inline void check_grid(std::span<const double> grid) {
  if (grid.size() < 5) throw ValidationError("operator grid needs at least 5 points");
  uniform_spacing(grid);
}

/// -i * central difference on the interior nodes.
inline BandedMatrix<complex> momentum_stencil(std::size_t n, double h) {
  BandedMatrix<complex> p(n, 1, 1);
  const complex c{0.0, -1.0 / (2 * h)};
  for (std::size_t i = 0; i < n; ++i) {
    if (i + 1 < n) p.at(i, i + 1) = c;
    if (i > 0) p.at(i, i - 1) = -c;
  }
  return p;
}

}  // namespace detail

/// von Roos PDM Hamiltonian
///   -(1/m) d^2 + (m'/m^2) d - [a(a+b+1)+b+1] m'^2/m^3 + (1+b)/2 m''/m^2 + V
/// with 3-point central differences.
inline RealOperator build_von_roos(MassProfile const& m, PotentialSpec const& V, OrderingParams const& ord,
                                   std::span<const double> grid) {
  detail::check_grid(grid);
  const double h = uniform_spacing(grid);
  RealOperator op;
  op.grid.assign(grid.begin(), grid.end());
  const auto nodes = op.interior();
  const auto s = detail::sample_mass(m, nodes);
  const std::size_t n = nodes.size();
  op.matrix = BandedMatrix<double>(n, 1, 1);
  const double c_grad = ord.gradient_squared_coefficient();
  const double c_curv = ord.curvature_coefficient();
  for (std::size_t i = 0; i < n; ++i) {
    const double mi = s.m[i];
    const double second = -1.0 / mi;
    const double first = s.dm[i] / (mi * mi);
    const double local = -c_grad * s.dm[i] * s.dm[i] / (mi * mi * mi) + c_curv * s.ddm[i] / (mi * mi) + V.W(nodes[i]);
    op.matrix.at(i, i) = -2 * second / (h * h) + local;
    if (i > 0) op.matrix.at(i, i - 1) = second / (h * h) - first / (2 * h);
    if (i + 1 < n) op.matrix.at(i, i + 1) = second / (h * h) + first / (2 * h);
  }
  op.hermitian_under = m.is_constant() ? HermitianUnder::dx : HermitianUnder::none;
  op.label = "von-roos";
  return op;
}

/// The fixed-ordering reduction (coefficients 7/16 and 1/4).
inline RealOperator build_reduced_pdm(MassProfile const& m, PotentialSpec const& V, std::span<const double> grid) {
  auto op = build_von_roos(m, V, OrderingParams::mm_ordering(), grid);
  op.label = "reduced-pdm";
  return op;
}

/// Exact diagonal similarity turning a tridiagonal with positive products of
/// paired off-diagonals into a symmetric one; spectra are unchanged.
inline RealOperator symmetrize(RealOperator const& op) {
  auto const& a = op.matrix;
  if (a.lower_bandwidth() != 1 || a.upper_bandwidth() != 1) throw ValidationError("symmetrize expects a tridiagonal operator");
  const std::size_t n = a.size();
  RealOperator out;
  out.grid = op.grid;
  out.matrix = BandedMatrix<double>(n, 1, 1);
  out.similarity.assign(n, 1.0);
  double log_s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    out.matrix.at(i, i) = a(i, i);
    if (i + 1 == n) break;
    const double up = a(i, i + 1), lo = a(i + 1, i);
    const double prod = up * lo;
    if (!(prod > 0))
      throw NumericalError(detail::concat("symmetrize: off-diagonal product not positive at interior row ", i,
                                          "; refine the grid so the first-derivative term is resolved"));
    const double off = std::copysign(std::sqrt(prod), up);
    out.matrix.at(i, i + 1) = off;
    out.matrix.at(i + 1, i) = off;
    log_s += 0.5 * std::log(up / lo);
    out.similarity[i + 1] = std::exp(log_s);
  }
  out.hermitian_under = HermitianUnder::dx;
  out.label = op.label + "+symmetrized";
  return out;
}

/// PDM pseudo-momentum pi = (-i/sqrt(m)) [d - m'/(4m)], discretized in the
/// equivalent factored form m^(-1/4) (-i d) m^(-1/4) so that the central
/// difference keeps the matrix Hermitian.
inline ComplexOperator build_pseudo_momentum(MassProfile const& m, std::span<const double> grid) {
  detail::check_grid(grid);
  const double h = uniform_spacing(grid);
  ComplexOperator op;
  op.grid.assign(grid.begin(), grid.end());
  const auto nodes = op.interior();
  std::vector<complex> w(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) w[i] = std::pow(m.checked(nodes[i]), -0.25);
  op.matrix = detail::momentum_stencil(nodes.size(), h).left_scaled(w).right_scaled(w);
  op.hermitian_under = HermitianUnder::dx;
  op.label = "pseudo-momentum";
  return op;
}

/// Pointwise discretization of (-i/sqrt(m)) [d - m'/(4m)]; same continuum
/// operator as build_pseudo_momentum but not a Hermitian matrix.
inline ComplexOperator build_pseudo_momentum_pointwise(MassProfile const& m, std::span<const double> grid) {
  detail::check_grid(grid);
  const double h = uniform_spacing(grid);
  ComplexOperator op;
  op.grid.assign(grid.begin(), grid.end());
  const auto nodes = op.interior();
  const auto s = detail::sample_mass(m, nodes);
  auto d = detail::momentum_stencil(nodes.size(), h);
  std::vector<complex> pref(nodes.size()), shift(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    pref[i] = 1.0 / std::sqrt(s.m[i]);
    shift[i] = complex{0.0, 0.25 * s.dm[i] / s.m[i]};  // -i * (-(1/4) m'/m)
  }
  op.matrix = (d + BandedMatrix<complex>::diagonal(shift)).left_scaled(pref);
  op.label = "pseudo-momentum-pointwise";
  return op;
}

/// PDM momentum P = sqrt(m) pi = -i [d - m'/(4m)]; Hermitian under m^(-1/2) dx.
inline ComplexOperator build_pdm_momentum(MassProfile const& m, std::span<const double> grid) {
  auto pi = build_pseudo_momentum(m, grid);
  const auto nodes = pi.interior();
  std::vector<complex> root(nodes.size());
  pi.weight.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double mi = m.checked(nodes[i]);
    root[i] = std::sqrt(mi);
    pi.weight[i] = 1.0 / std::sqrt(mi);
  }
  pi.matrix = pi.matrix.left_scaled(root);
  pi.hermitian_under = m.is_constant() ? HermitianUnder::dx : HermitianUnder::weighted;
  pi.label = "pdm-momentum";
  return pi;
}

/// max |(W A) - (W A)^dagger| with W = diag(weight) (identity when empty).
template <class T>
double hermiticity_defect(BandedMatrix<T> const& a, std::span<const double> weight = {}) {
  if (weight.empty()) return max_abs_difference(a, a.adjoint());
  std::vector<T> w(weight.begin(), weight.end());
  auto wa = a.left_scaled(w);
  return max_abs_difference(wa, wa.adjoint());
}

/// Smooth probe functions 1, t, t^2, t^3 with t = (x - centre)/half_width.
/// Both 3-point and 5-point central stencils are exact on them for constant
/// coefficients, so identity residuals isolate the mass-dependent error.
inline std::vector<std::vector<double>> polynomial_probes(std::span<const double> nodes) {
  const double c = 0.5 * (nodes.front() + nodes.back());
  const double half = 0.5 * (nodes.back() - nodes.front());
  std::vector<std::vector<double>> probes(4, std::vector<double>(nodes.size()));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double t = (nodes[i] - c) / half;
    probes[0][i] = 1;
    probes[1][i] = t;
    probes[2][i] = t * t;
    probes[3][i] = t * t * t;
  }
  return probes;
}

namespace detail {

/// max over probes and rows [margin, n-margin) of |(a - b) f|.
template <class A, class B>
double probe_residual(A const& a, B const& b, std::vector<std::vector<double>> const& probes, std::size_t margin) {
  double worst = 0;
  for (auto const& f : probes) {
    std::vector<complex> fc(f.begin(), f.end());
    const auto ya = a.apply(fc);
    const auto yb = b.apply(fc);
    for (std::size_t i = margin; i + margin < ya.size(); ++i) worst = std::max(worst, std::abs(ya[i] - yb[i]));
  }
  return worst;
}

}  // namespace detail

struct KineticIdentityReport {
  double pi_form = 0;       // |(pi pi + V) - H| on probes
  double p_over_m_form = 0; // |(P P / m + V) - H| on probes
};

/// Compares pi^2 + V (operator applied twice) and diag(1/m) P P + V with the
/// reduced PDM Hamiltonian, on polynomial probes over the interior rows.
inline KineticIdentityReport kinetic_identity_residual(MassProfile const& m, PotentialSpec const& V, std::span<const double> grid) {
  const auto H = to_complex(build_reduced_pdm(m, V, grid).matrix);
  const auto pi = build_pseudo_momentum(m, grid);
  const auto P = build_pdm_momentum(m, grid);
  const auto nodes = pi.interior();
  std::vector<complex> v(nodes.size()), inv_m(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    v[i] = V.W(nodes[i]);
    inv_m[i] = 1.0 / m.checked(nodes[i]);
  }
  const auto Vd = BandedMatrix<complex>::diagonal(v);
  const auto pi_form = pi.matrix * pi.matrix + Vd;
  const auto p_form = (P.matrix * P.matrix).left_scaled(inv_m) + Vd;
  const auto probes = polynomial_probes(nodes);
  return {detail::probe_residual(pi_form, H, probes, 2), detail::probe_residual(p_form, H, probes, 2)};
}

/// 1D minimal coupling: expanded operator
///   H15 + i e A'/sqrt(m) + 2 i e (A/sqrt(m)) [d - m'/(4m)] + e^2 A^2 + W
/// versus the squared form (pi - e A)^2 + W, on polynomial probes.
/// `A` is the vector potential as a function of x; `dA` its derivative
/// (central differences when not supplied).
inline double minimal_coupling_identity_residual(MassProfile const& m, std::function<double(double)> const& A,
                                                 PotentialSpec const& W, std::span<const double> grid, double e = 1.0,
                                                 std::function<double(double)> dA = {}) {
  if (!dA) {
    dA = [A](double x) {
      const double eps = 1e-5 * std::max(1.0, std::abs(x));
      return (A(x + eps) - A(x - eps)) / (2 * eps);
    };
  }
  const double h = uniform_spacing(grid);
  const auto kinetic = to_complex(build_reduced_pdm(m, PotentialSpec::none(), grid).matrix);
  const auto pi = build_pseudo_momentum(m, grid);
  const auto nodes = pi.interior();
  const auto s = detail::sample_mass(m, nodes);
  const std::size_t n = nodes.size();
  std::vector<complex> a(n), local(n), pref(n), shift(n), w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double ai = A(nodes[i]);
    const double root = std::sqrt(s.m[i]);
    a[i] = ai;
    w[i] = W.W(nodes[i]);
    local[i] = complex{0.0, e * dA(nodes[i]) / root} + e * e * ai * ai + W.W(nodes[i]);
    pref[i] = complex{0.0, 2 * e * ai / root};
    shift[i] = -0.25 * s.dm[i] / s.m[i];
  }
  BandedMatrix<complex> d(n, 1, 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (i + 1 < n) d.at(i, i + 1) = 1.0 / (2 * h);
    if (i > 0) d.at(i, i - 1) = -1.0 / (2 * h);
  }
  const auto expanded = kinetic + BandedMatrix<complex>::diagonal(local) + (d + BandedMatrix<complex>::diagonal(shift)).left_scaled(pref);
  std::vector<complex> ea(n);
  for (std::size_t i = 0; i < n; ++i) ea[i] = e * a[i];
  const auto M = pi.matrix - BandedMatrix<complex>::diagonal(ea);
  const auto squared = M * M + BandedMatrix<complex>::diagonal(w);
  return detail::probe_residual(expanded, squared, polynomial_probes(nodes), 2);
}

}  // namespace pdm
