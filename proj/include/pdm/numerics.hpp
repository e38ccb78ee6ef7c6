#pragma once

// Quadrature, finite-difference weights and interpolants shared by all modules.

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "pdm/core.hpp"

namespace pdm::numerics {

/// Integral over [a, b] of the quadratic interpolating (t[k], f[k]), k = 0..2.
template <class T>
T quadratic_segment(double a, double b, std::array<double, 3> const& t, std::array<T, 3> const& f) {
  const double len = b - a;
  T acc{};
  for (int k = 0; k < 3; ++k) {
    const double p = t[(k + 1) % 3] - a;
    const double q = t[(k + 2) % 3] - a;
    const double denom = (t[k] - t[(k + 1) % 3]) * (t[k] - t[(k + 2) % 3]);
    const double integral = len * len * len / 3.0 - (p + q) * len * len / 2.0 + p * q * len;
    acc += f[k] * (integral / denom);
  }
  return acc;
}

/// Integral over [a, b] of the cubic interpolating (t[k], f[k]), k = 0..3.
/// Three-point Gauss-Legendre on the interpolant is exact.
template <class T>
T cubic_segment(double a, double b, std::array<double, 4> const& t, std::array<T, 4> const& f) {
  static constexpr double gx[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
  static constexpr double gw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  T acc{};
  for (int g = 0; g < 3; ++g) {
    const double x = mid + half * gx[g];
    for (int k = 0; k < 4; ++k) {
      double l = 1;
      for (int j = 0; j < 4; ++j)
        if (j != k) l *= (x - t[j]) / (t[k] - t[j]);
      acc += f[k] * (gw[g] * half * l);
    }
  }
  return acc;
}

/// Cumulative integral of f over an ascending (possibly non-uniform) grid,
/// starting at 0 on the first node. Simpson on interval pairs; the odd nodes and
/// a trailing odd interval use the cubic through four neighbouring nodes, so
/// every node carries the same O(h^4) global accuracy and cubics are exact.
template <class T>
std::vector<T> cumulative_simpson(std::span<const double> x, std::span<const T> f) {
  const std::size_t n = x.size();
  if (f.size() != n) throw ValidationError("cumulative_simpson: size mismatch");
  std::vector<T> out(n, T{});
  if (n < 2) return out;
  if (n == 2) {
    out[1] = 0.5 * (x[1] - x[0]) * (f[0] + f[1]);
    return out;
  }
  auto cubic_from = [&](std::size_t a, std::size_t lo) {
    lo = std::min(lo, n - 4);
    const std::array<double, 4> t{x[lo], x[lo + 1], x[lo + 2], x[lo + 3]};
    const std::array<T, 4> v{f[lo], f[lo + 1], f[lo + 2], f[lo + 3]};
    return cubic_segment(x[a], x[a + 1], t, v);
  };
  std::size_t i = 0;
  for (; i + 2 < n; i += 2) {
    const std::array<double, 3> t{x[i], x[i + 1], x[i + 2]};
    const std::array<T, 3> v{f[i], f[i + 1], f[i + 2]};
    out[i + 1] = n >= 4 ? out[i] + cubic_from(i, i) : out[i] + quadratic_segment(x[i], x[i + 1], t, v);
    out[i + 2] = out[i] + quadratic_segment(x[i], x[i + 2], t, v);
  }
  if (i + 1 < n) {
    if (n >= 4) {
      out[n - 1] = out[n - 2] + cubic_from(n - 2, n - 4);
    } else {
      const std::array<double, 3> t{x[n - 3], x[n - 2], x[n - 1]};
      const std::array<T, 3> v{f[n - 3], f[n - 2], f[n - 1]};
      out[n - 1] = out[n - 2] + quadratic_segment(x[n - 2], x[n - 1], t, v);
    }
  }
  return out;
}

template <class T>
T integrate(std::span<const double> x, std::span<const T> f) {
  return cumulative_simpson<T>(x, f).back();
}

/// Fornberg finite-difference weights for derivatives 0..max_deriv at `x0` on
/// arbitrary `nodes`. Returns weights[d][j].
inline std::vector<std::vector<double>> fornberg_weights(double x0, std::span<const double> nodes, int max_deriv) {
  const int n = static_cast<int>(nodes.size());
  std::vector<std::vector<double>> c(max_deriv + 1, std::vector<double>(n, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, max_deriv);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

/// Derivative of order `deriv` of tabulated data at every node, using a stencil
/// of `npts` nodes centred where possible and shifted inwards at the ends.
inline std::vector<double> stencil_derivative(std::span<const double> x, std::span<const double> y, int deriv,
                                              std::size_t npts) {
  const std::size_t n = x.size();
  if (n < npts) throw ValidationError(detail::concat("need at least ", npts, " nodes for a derivative stencil"));
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t lo = i >= npts / 2 ? i - npts / 2 : 0;
    lo = std::min(lo, n - npts);
    const auto w = fornberg_weights(x[i], x.subspan(lo, npts), deriv);
    double acc = 0;
    for (std::size_t j = 0; j < npts; ++j) acc += w[deriv][j] * y[lo + j];
    out[i] = acc;
  }
  return out;
}

/// Index k with x[k] <= t <= x[k+1], or throws DomainError when t is outside.
inline std::size_t locate(std::span<const double> x, double t) {
  const double span_tol = 1e-12 * std::max(1.0, std::abs(x.back() - x.front()));
  if (t < x.front() - span_tol || t > x.back() + span_tol)
    throw DomainError(detail::concat("point ", t, " outside tabulated interval [", x.front(), ", ", x.back(), "]"));
  auto it = std::upper_bound(x.begin(), x.end(), t);
  std::size_t k = it == x.begin() ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
  return std::min(k, x.size() - 2);
}

/// Piecewise cubic Hermite interpolant from values and slopes.
class CubicHermite {
 public:
  CubicHermite() = default;
  CubicHermite(std::vector<double> x, std::vector<double> y, std::vector<double> slope)
      : x_(std::move(x)), y_(std::move(y)), s_(std::move(slope)) {
    if (x_.size() < 2 || y_.size() != x_.size() || s_.size() != x_.size())
      throw ValidationError("CubicHermite: inconsistent table sizes");
  }

  double operator()(double t) const {
    const std::size_t k = locate(x_, t);
    const double h = x_[k + 1] - x_[k];
    const double u = (t - x_[k]) / h;
    const double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
    const double h10 = u * (1 - u) * (1 - u);
    const double h01 = u * u * (3 - 2 * u);
    const double h11 = u * u * (u - 1);
    return h00 * y_[k] + h10 * h * s_[k] + h01 * y_[k + 1] + h11 * h * s_[k + 1];
  }

  double derivative(double t) const {
    const std::size_t k = locate(x_, t);
    const double h = x_[k + 1] - x_[k];
    const double u = (t - x_[k]) / h;
    const double d00 = 6 * u * (u - 1) / h;
    const double d10 = (1 - u) * (1 - 3 * u);
    const double d01 = -d00;
    const double d11 = u * (3 * u - 2);
    return d00 * y_[k] + d10 * s_[k] + d01 * y_[k + 1] + d11 * s_[k + 1];
  }

  std::span<const double> nodes() const { return x_; }
  std::span<const double> values() const { return y_; }

 private:
  std::vector<double> x_, y_, s_;
};

/// Fritsch–Carlson limiter: adjusts slopes of increasing data so the Hermite
/// cubic stays monotone. Leaves slopes of smooth, well-resolved data untouched.
inline void limit_monotone(std::span<const double> x, std::span<const double> y, std::span<double> slope) {
  for (std::size_t k = 0; k + 1 < x.size(); ++k) {
    const double delta = (y[k + 1] - y[k]) / (x[k + 1] - x[k]);
    if (delta == 0) {
      slope[k] = slope[k + 1] = 0;
      continue;
    }
    double a = slope[k] / delta;
    double b = slope[k + 1] / delta;
    if (a < 0) slope[k] = a = 0;
    if (b < 0) slope[k + 1] = b = 0;
    const double r = a * a + b * b;
    if (r > 9) {
      const double tau = 3 / std::sqrt(r);
      slope[k] = tau * a * delta;
      slope[k + 1] = tau * b * delta;
    }
  }
}

/// Local four-point Lagrange interpolation of real or complex samples.
template <class T>
T lagrange4(std::span<const double> x, std::span<const T> y, double t) {
  const std::size_t n = x.size();
  if (n < 4) throw ValidationError("lagrange4 needs at least 4 nodes");
  const std::size_t k = locate(x, t);
  std::size_t lo = k >= 1 ? k - 1 : 0;
  lo = std::min(lo, n - 4);
  T acc{};
  for (std::size_t i = lo; i < lo + 4; ++i) {
    double w = 1;
    for (std::size_t j = lo; j < lo + 4; ++j)
      if (j != i) w *= (t - x[j]) / (x[i] - x[j]);
    acc += w * y[i];
  }
  return acc;
}

}  // namespace pdm::numerics
