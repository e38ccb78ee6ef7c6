#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pdm {

using complex = std::complex<double>;
using Vec3 = std::array<double, 3>;

// Error taxonomy. The CLI maps ValidationError/DomainError to exit code 2 and
// NumericalError to exit code 3.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

template <class... Args>
std::string concat(Args const&... args) {
  std::ostringstream os;
  os.precision(17);
  (os << ... << args);
  return os.str();
}

}  // namespace detail

inline double norm(Vec3 const& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

inline Vec3 operator+(Vec3 const& a, Vec3 const& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(Vec3 const& a, Vec3 const& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, Vec3 const& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline double dot(Vec3 const& a, Vec3 const& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

/// Uniform grid of `n` points on [a, b], both ends included.
inline std::vector<double> uniform_grid(double a, double b, std::size_t n) {
  if (n < 2) throw ValidationError(detail::concat("grid needs at least 2 points, got ", n));
  if (!(b > a)) throw ValidationError(detail::concat("grid bounds must satisfy min < max, got [", a, ", ", b, "]"));
  std::vector<double> g(n);
  const double h = (b - a) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g[i] = a + h * static_cast<double>(i);
  g.back() = b;
  return g;
}

inline bool is_ascending(std::span<const double> g) {
  for (std::size_t i = 1; i < g.size(); ++i)
    if (!(g[i] > g[i - 1])) return false;
  return true;
}

/// Spacing of a uniform grid; throws ValidationError when the grid is not uniform.
inline double uniform_spacing(std::span<const double> g, double rel_tol = 1e-9) {
  if (g.size() < 3) throw ValidationError("uniform grid needs at least 3 points");
  const double h = (g.back() - g.front()) / static_cast<double>(g.size() - 1);
  if (!(h > 0)) throw ValidationError("grid must be ascending");
  for (std::size_t i = 1; i < g.size(); ++i) {
    if (std::abs((g[i] - g[i - 1]) - h) > rel_tol * std::abs(h) + 1e-14 * std::abs(g[i]))
      throw ValidationError(detail::concat("grid is not uniform near x=", g[i]));
  }
  return h;
}

inline double max_abs(std::span<const double> v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace pdm
