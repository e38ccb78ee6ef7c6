#pragma once

#include <cmath>

namespace pdm {

/// Second-order forward-mode jet: carries f, f' and f'' through arithmetic so
/// closed-form profiles get exact derivatives from a single generic expression.
struct Jet {
  double v = 0, d = 0, dd = 0;

  constexpr Jet() = default;
  constexpr Jet(double value) : v(value) {}  // NOLINT: implicit constants are the point
  constexpr Jet(double value, double d1, double d2) : v(value), d(d1), dd(d2) {}

  static constexpr Jet variable(double x) { return {x, 1.0, 0.0}; }
};

constexpr Jet operator+(Jet a, Jet b) { return {a.v + b.v, a.d + b.d, a.dd + b.dd}; }
constexpr Jet operator-(Jet a, Jet b) { return {a.v - b.v, a.d - b.d, a.dd - b.dd}; }
constexpr Jet operator-(Jet a) { return {-a.v, -a.d, -a.dd}; }
constexpr Jet operator*(Jet a, Jet b) {
  return {a.v * b.v, a.d * b.v + a.v * b.d, a.dd * b.v + 2 * a.d * b.d + a.v * b.dd};
}
constexpr Jet operator/(Jet a, Jet b) {
  const double q = a.v / b.v;
  const double dq = (a.d - q * b.d) / b.v;
  const double ddq = (a.dd - 2 * dq * b.d - q * b.dd) / b.v;
  return {q, dq, ddq};
}

// Chain rule with outer derivatives g(v), g'(v), g''(v).
constexpr Jet chain(Jet a, double g, double g1, double g2) {
  return {g, g1 * a.d, g2 * a.d * a.d + g1 * a.dd};
}

inline Jet exp(Jet a) {
  const double e = std::exp(a.v);
  return chain(a, e, e, e);
}
inline Jet log(Jet a) { return chain(a, std::log(a.v), 1 / a.v, -1 / (a.v * a.v)); }
inline Jet sqrt(Jet a) {
  const double s = std::sqrt(a.v);
  return chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}
inline Jet pow(Jet a, double p) {
  const double g = std::pow(a.v, p);
  return chain(a, g, p * g / a.v, p * (p - 1) * g / (a.v * a.v));
}
inline Jet tanh(Jet a) {
  const double t = std::tanh(a.v);
  const double s = 1 - t * t;
  return chain(a, t, s, -2 * t * s);
}
inline Jet atan(Jet a) {
  const double w = 1 + a.v * a.v;
  return chain(a, std::atan(a.v), 1 / w, -2 * a.v / (w * w));
}
inline Jet abs(Jet a) { return a.v < 0 ? -a : a; }

}  // namespace pdm
