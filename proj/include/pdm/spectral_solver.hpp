#pragma once

// Eigensolvers for the 1D operators and the q-space / x-space comparison
// experiments built on them.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pdm/banded_matrix.hpp"
#include "pdm/core.hpp"
#include "pdm/mass_models.hpp"
#include "pdm/operators.hpp"
#include "pdm/point_transform.hpp"

namespace pdm {

struct GridMeta {
  std::size_t n_points = 0;
  double spacing = 0;
  double lo = 0, hi = 0;
};

struct SpectrumResult {
  std::vector<double> eigenvalues;
  std::vector<GriddedWavefunction> eigenvectors;  // empty unless requested
  std::vector<double> residuals;                  // max |Hv - Ev| for unit 2-norm v
  double operator_norm = 0;
  GridMeta grid;
  std::string solver;

  std::size_t size() const { return eigenvalues.size(); }
};

namespace detail {

inline GridMeta grid_meta(std::span<const double> grid) {
  return {grid.size(), (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1), grid.front(), grid.back()};
}

/// Number of eigenvalues of the symmetric tridiagonal (d, e) below x.
inline std::size_t sturm_count(std::span<const double> d, std::span<const double> e, double x) {
  const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  std::size_t count = 0;
  // An exact zero pivot counts as negative, consistently with its replacement.
  double q = d[0] - x;
  for (std::size_t i = 0;;) {
    if (std::abs(q) < tiny) q = -tiny;
    if (q < 0) ++count;
    if (++i == d.size()) break;
    q = d[i] - x - e[i - 1] * e[i - 1] / q;
  }
  return count;
}

/// Solves (T - shift) x = b for tridiagonal T with partial pivoting.
class ShiftedTridiagonalLU {
 public:
  ShiftedTridiagonalLU(std::span<const double> d, std::span<const double> e, double shift) : n_(d.size()) {
    u0_.assign(n_, 0);
    u1_.assign(n_, 0);
    u2_.assign(n_, 0);
    l_.assign(n_, 0);
    piv_.assign(n_, false);
    // Row i holds diagonal entries at columns i, i+1, i+2 after elimination.
    double a = d[0] - shift;
    double b = n_ > 1 ? e[0] : 0;
    double c = 0;
    const double floor = std::numeric_limits<double>::epsilon() * (std::abs(shift) + 1);
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      const double sub = e[i];
      const double next_d = d[i + 1] - shift;
      const double next_e = i + 2 < n_ ? e[i + 1] : 0;
      if (std::abs(sub) > std::abs(a)) {
        piv_[i] = true;
        l_[i] = a / sub;
        u0_[i] = sub;
        u1_[i] = next_d;
        u2_[i] = next_e;
        a = b - l_[i] * next_d;
        b = c - l_[i] * next_e;
      } else {
        if (a == 0) a = floor;
        l_[i] = sub / a;
        u0_[i] = a;
        u1_[i] = b;
        u2_[i] = c;
        a = next_d - l_[i] * b;
        b = next_e - l_[i] * c;
      }
      c = 0;
    }
    if (a == 0) a = floor;
    u0_[n_ - 1] = a;
  }

  void solve(std::vector<double>& x) const {
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      if (piv_[i]) std::swap(x[i], x[i + 1]);
      x[i + 1] -= l_[i] * x[i];
    }
    for (std::size_t k = n_; k-- > 0;) {
      double v = x[k];
      if (k + 1 < n_) v -= u1_[k] * x[k + 1];
      if (k + 2 < n_) v -= u2_[k] * x[k + 2];
      x[k] = v / u0_[k];
    }
  }

 private:
  std::size_t n_;
  std::vector<double> u0_, u1_, u2_, l_;
  std::vector<bool> piv_;
};

inline double norm2(std::span<const double> v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace detail

/// The k lowest eigenpairs of a symmetric tridiagonal operator by Sturm
/// bisection and inverse iteration.
inline SpectrumResult solve_symmetric(RealOperator const& op, std::size_t k, bool with_vectors = true) {
  auto const& a = op.matrix;
  const std::size_t n = a.size();
  if (a.lower_bandwidth() > 1 || a.upper_bandwidth() > 1) throw ValidationError("solve_symmetric expects a tridiagonal operator");
  if (k > n) throw ValidationError(detail::concat("requested ", k, " eigenvalues but the operator has dimension ", n));
  if (hermiticity_defect(a) > 1e-12 * std::max(1.0, a.max_abs()))
    throw ValidationError("solve_symmetric needs a symmetric matrix; call symmetrize first");
  SpectrumResult res;
  res.grid = detail::grid_meta(op.grid);
  res.solver = "sturm-bisection";
  res.operator_norm = a.norm_inf();
  if (k == 0) return res;

  std::vector<double> d(n), e(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i);
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = a(i, i + 1);
  double lo = std::numeric_limits<double>::max(), hi = std::numeric_limits<double>::lowest();
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(e[i - 1]) : 0.0) + (i + 1 < n ? std::abs(e[i]) : 0.0);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }
  const double eps = std::numeric_limits<double>::epsilon();
  const double scale = std::max(std::abs(lo), std::abs(hi));

  res.eigenvalues.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    double left = j > 0 ? res.eigenvalues[j - 1] - 4 * eps * scale : lo;
    double right = hi;
    for (int it = 0; it < 400 && right - left > 2 * eps * std::max(std::abs(left), std::abs(right)) + eps * eps * scale; ++it) {
      const double mid = 0.5 * (left + right);
      if (detail::sturm_count(d, e, mid) > j) right = mid;
      else left = mid;
    }
    res.eigenvalues[j] = 0.5 * (left + right);
  }

  // Inverse iteration; eigenvalues closer than this are treated as a cluster.
  const double cluster = 1e-3 * res.operator_norm;
  const double h = res.grid.spacing;
  std::vector<std::vector<double>> vecs;
  res.residuals.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    const double lam = res.eigenvalues[j];
    detail::ShiftedTridiagonalLU lu(d, e, lam);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(i) + static_cast<double>(j));
    std::size_t first = j;
    while (first > 0 && lam - res.eigenvalues[first - 1] < cluster) --first;
    for (int it = 0; it < 4; ++it) {
      for (std::size_t p = first; p < j; ++p) {
        double dotp = 0;
        for (std::size_t i = 0; i < n; ++i) dotp += vecs[p][i] * v[i];
        for (std::size_t i = 0; i < n; ++i) v[i] -= dotp * vecs[p][i];
      }
      lu.solve(v);
      const double nv = detail::norm2(v);
      if (!(nv > 0) || !std::isfinite(nv)) throw NumericalError(detail::concat("inverse iteration failed for eigenvalue index ", j));
      for (double& x : v) x /= nv;
    }
    for (std::size_t p = first; p < j; ++p) {
      double dotp = 0;
      for (std::size_t i = 0; i < n; ++i) dotp += vecs[p][i] * v[i];
      for (std::size_t i = 0; i < n; ++i) v[i] -= dotp * vecs[p][i];
    }
    const double nv = detail::norm2(v);
    for (double& x : v) x /= nv;
    const auto av = a.apply(v);
    double r = 0;
    for (std::size_t i = 0; i < n; ++i) r = std::max(r, std::abs(av[i] - lam * v[i]));
    res.residuals[j] = r;
    if (r > 1e-10 * res.operator_norm) throw NumericalError(detail::concat("eigenpair ", j, " did not converge: residual ", r));
    vecs.push_back(std::move(v));
  }

  if (with_vectors) {
    for (auto const& v : vecs) {
      GriddedWavefunction w{op.grid, std::vector<complex>(op.grid.size(), 0.0), Measure::dx};
      int sign = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const double s = op.similarity.empty() ? 1.0 : op.similarity[i];
        w.values[i + 1] = v[i] / s;
        if (sign == 0 && std::abs(v[i]) > 1e-3) sign = v[i] > 0 ? 1 : -1;
      }
      double norm2 = 0;
      for (auto const& x : w.values) norm2 += std::norm(x) * h;
      const double f = (sign < 0 ? -1.0 : 1.0) / std::sqrt(norm2);
      for (auto& x : w.values) x *= f;
      res.eigenvectors.push_back(std::move(w));
    }
  }
  return res;
}

/// Dense fallback for operators without symmetric structure; eigenvalues whose
/// imaginary part exceeds `imag_tol` relative to the norm raise NumericalError.
inline SpectrumResult solve_general(RealOperator const& op, std::size_t k, double imag_tol = 1e-8) {
  auto const& a = op.matrix;
  const std::size_t n = a.size();
  if (k > n) throw ValidationError(detail::concat("requested ", k, " eigenvalues but the operator has dimension ", n));
  if (n > 3000) throw ValidationError("solve_general is dense; use at most 3000 interior points");
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = a.band_begin(i); j <= a.band_end(i); ++j) dense(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(i, j);
  Eigen::EigenSolver<Eigen::MatrixXd> es(dense, false);
  if (es.info() != Eigen::Success) throw NumericalError("dense eigensolver did not converge");
  SpectrumResult res;
  res.grid = detail::grid_meta(op.grid);
  res.solver = "dense-general";
  res.operator_norm = a.norm_inf();
  std::vector<complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::sort(ev.begin(), ev.end(), [](complex x, complex y) { return x.real() < y.real(); });
  for (std::size_t j = 0; j < k; ++j) {
    if (std::abs(ev[j].imag()) > imag_tol * res.operator_norm)
      throw NumericalError(detail::concat("eigenvalue ", j, " has imaginary part ", ev[j].imag()));
    res.eigenvalues.push_back(ev[j].real());
  }
  return res;
}

/// (4 E_fine - E_coarse)/3, for spectra on grids with spacing ratio 2.
inline std::vector<double> richardson(std::span<const double> coarse, std::span<const double> fine) {
  if (coarse.size() != fine.size()) throw ValidationError("richardson: spectra of different length");
  std::vector<double> out(coarse.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (4 * fine[i] - coarse[i]) / 3;
  return out;
}

/// Grid with half the spacing over the same interval.
inline std::size_t refined_points(std::size_t n) { return 2 * n - 1; }

inline double max_relative_difference(std::span<const double> a, std::span<const double> b) {
  double worst = 0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]) / std::max(std::abs(b[i]), std::numeric_limits<double>::min()));
  return worst;
}

struct SpectralOptions {
  bool richardson = false;
  /// When set, q-space eigenvectors whose amplitude next to a wall exceeds
  /// this fraction of their peak raise DomainError.
  std::optional<double> wall_tolerance;
  /// x position where q = 0 (default: the left end of the x domain).
  std::optional<double> anchor;
};

namespace detail {

inline void check_confinement(SpectrumResult const& s, double tol) {
  for (std::size_t j = 0; j < s.eigenvectors.size(); ++j) {
    auto const& v = s.eigenvectors[j].values;
    double peak = 0;
    for (auto const& x : v) peak = std::max(peak, std::abs(x));
    const double edge = std::max(std::abs(v[1]), std::abs(v[v.size() - 2]));
    if (edge > tol * peak)
      throw DomainError(concat("state ", j, " is not confined by the potential on [", s.grid.lo, ", ", s.grid.hi,
                               "] (wall amplitude ", edge / peak, " of peak); enlarge the x domain"));
  }
}

/// -d^2/dq^2 + V(q) on a uniform q grid.
inline SpectrumResult solve_q_space(PotentialSpec const& V_q, double q_lo, double q_hi, std::size_t n, std::size_t k,
                                    std::optional<double> wall_tolerance) {
  const auto grid = uniform_grid(q_lo, q_hi, n);
  auto res = solve_symmetric(build_von_roos(constant_mass(), V_q, OrderingParams::mm_ordering(), grid), k, wall_tolerance.has_value());
  if (wall_tolerance) check_confinement(res, *wall_tolerance);
  return res;
}

inline SpectrumResult solve_x_space(MassProfile const& m, PotentialSpec const& V_q, OrderingParams const& ord, double x_lo,
                                    double x_hi, std::size_t n, std::size_t k, TransformMap const& map) {
  const auto grid = uniform_grid(x_lo, x_hi, n);
  return solve_symmetric(symmetrize(build_von_roos(m, compose_with_map(V_q, map), ord, grid)), k, false);
}

}  // namespace detail

struct IsospectralityReport {
  std::vector<double> E_q, E_x;
  double max_rel_diff = 0;
  std::size_t n_points = 0;
  double q_lo = 0, q_hi = 0;
  bool richardson = false;
};

/// Compares -d^2/dq^2 + V(q) on the q image of [x_lo, x_hi] with the
/// symmetrized reduced PDM operator carrying V(q(x)) on the x grid.
inline IsospectralityReport isospectrality_check(MassProfile const& m, PotentialSpec const& V_q, double x_lo, double x_hi,
                                                 std::size_t n_points, std::size_t k, SpectralOptions const& opt = {}) {
  if (n_points < 16) throw ValidationError("isospectrality_check needs at least 16 grid points");
  if (!(x_hi > x_lo)) throw ValidationError("isospectrality_check: empty x domain");
  const std::size_t n_map = opt.richardson ? refined_points(n_points) : n_points;
  const auto map = build_map(m, uniform_grid(x_lo, x_hi, std::max<std::size_t>(n_map, 4001)), opt.anchor);
  IsospectralityReport rep;
  rep.n_points = n_points;
  rep.q_lo = map.q_min();
  rep.q_hi = map.q_max();
  rep.richardson = opt.richardson;
  const auto mm = OrderingParams::mm_ordering();
  rep.E_q = detail::solve_q_space(V_q, rep.q_lo, rep.q_hi, n_points, k, opt.wall_tolerance).eigenvalues;
  rep.E_x = detail::solve_x_space(m, V_q, mm, x_lo, x_hi, n_points, k, map).eigenvalues;
  if (opt.richardson) {
    const std::size_t nf = refined_points(n_points);
    rep.E_q = richardson(rep.E_q, detail::solve_q_space(V_q, rep.q_lo, rep.q_hi, nf, k, std::nullopt).eigenvalues);
    rep.E_x = richardson(rep.E_x, detail::solve_x_space(m, V_q, mm, x_lo, x_hi, nf, k, map).eigenvalues);
  }
  rep.max_rel_diff = max_relative_difference(rep.E_x, rep.E_q);
  return rep;
}

struct OrderingRow {
  std::string name;
  OrderingParams params;
  std::vector<double> eigenvalues;
  std::vector<double> residuals;
  std::vector<double> abs_deviation;  // |E_n - E_n(reference)|
  double max_rel_deviation = 0;
};

struct OrderingSweepReport {
  std::vector<double> reference;  // q-space spectrum
  std::vector<OrderingRow> rows;
  std::size_t n_points = 0;
};

/// Spectra of the von Roos operator for each ordering against the q-space
/// reference on the image of [x_lo, x_hi].
inline OrderingSweepReport ordering_sweep(MassProfile const& m, PotentialSpec const& V_q, double x_lo, double x_hi,
                                          std::size_t n_points, std::vector<NamedOrdering> const& orderings, std::size_t k,
                                          SpectralOptions const& opt = {}) {
  if (n_points < 16) throw ValidationError("ordering_sweep needs at least 16 grid points");
  const auto map = build_map(m, uniform_grid(x_lo, x_hi, std::max<std::size_t>(n_points, 4001)), opt.anchor);
  OrderingSweepReport rep;
  rep.n_points = n_points;
  rep.reference = detail::solve_q_space(V_q, map.q_min(), map.q_max(), n_points, k, opt.wall_tolerance).eigenvalues;
  if (opt.richardson)
    rep.reference = richardson(rep.reference,
                               detail::solve_q_space(V_q, map.q_min(), map.q_max(), refined_points(n_points), k, std::nullopt).eigenvalues);
  for (auto const& o : orderings) {
    OrderingRow row{o.name, o.params, {}, {}, {}, 0};
    auto s = detail::solve_x_space(m, V_q, o.params, x_lo, x_hi, n_points, k, map);
    row.eigenvalues = s.eigenvalues;
    row.residuals = s.residuals;
    if (opt.richardson)
      row.eigenvalues = richardson(row.eigenvalues, detail::solve_x_space(m, V_q, o.params, x_lo, x_hi, refined_points(n_points), k, map).eigenvalues);
    for (std::size_t i = 0; i < k; ++i) row.abs_deviation.push_back(std::abs(row.eigenvalues[i] - rep.reference[i]));
    row.max_rel_deviation = max_relative_difference(row.eigenvalues, rep.reference);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

inline std::vector<NamedOrdering> standard_orderings() {
  return {{"mm", OrderingParams::mm_ordering()},
          {"bendaniel-duke", OrderingParams::bendaniel_duke()},
          {"gora-williams", OrderingParams::gora_williams()},
          {"zhu-kroemer", OrderingParams::zhu_kroemer()}};
}

}  // namespace pdm
