#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "pdm/core.hpp"

namespace pdm {

/// Square band matrix with kl sub- and ku super-diagonals, stored by diagonal.
template <class T>
class BandedMatrix {
 public:
  using value_type = T;

  BandedMatrix() = default;
  BandedMatrix(std::size_t n, int kl, int ku) : n_(n), kl_(kl), ku_(ku), data_(n * static_cast<std::size_t>(kl + ku + 1), T{}) {
    if (kl < 0 || ku < 0) throw ValidationError("band widths must be non-negative");
  }

  static BandedMatrix diagonal(std::span<const T> d) {
    BandedMatrix out(d.size(), 0, 0);
    for (std::size_t i = 0; i < d.size(); ++i) out.at(i, i) = d[i];
    return out;
  }

  static BandedMatrix identity(std::size_t n) {
    BandedMatrix out(n, 0, 0);
    for (std::size_t i = 0; i < n; ++i) out.at(i, i) = T{1};
    return out;
  }

  std::size_t size() const { return n_; }
  int lower_bandwidth() const { return kl_; }
  int upper_bandwidth() const { return ku_; }

  bool in_band(std::size_t i, std::size_t j) const {
    const long k = static_cast<long>(j) - static_cast<long>(i);
    return i < n_ && j < n_ && k >= -kl_ && k <= ku_;
  }

  T operator()(std::size_t i, std::size_t j) const { return in_band(i, j) ? data_[index(i, j)] : T{}; }

  T& at(std::size_t i, std::size_t j) {
    if (!in_band(i, j)) throw ValidationError(detail::concat("entry (", i, ", ", j, ") outside the band"));
    return data_[index(i, j)];
  }

  std::vector<T> apply(std::span<const T> x) const {
    if (x.size() != n_) throw ValidationError("apply: vector length mismatch");
    std::vector<T> y(n_, T{});
    for (std::size_t i = 0; i < n_; ++i) {
      const std::size_t j0 = i >= static_cast<std::size_t>(kl_) ? i - kl_ : 0;
      const std::size_t j1 = std::min(n_ - 1, i + ku_);
      T acc{};
      for (std::size_t j = j0; j <= j1; ++j) acc += data_[index(i, j)] * x[j];
      y[i] = acc;
    }
    return y;
  }

  BandedMatrix adjoint() const {
    BandedMatrix out(n_, ku_, kl_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = band_begin(i); j <= band_end(i); ++j) out.at(j, i) = conj_if(data_[index(i, j)]);
    return out;
  }

  /// diag(d) * A
  BandedMatrix left_scaled(std::span<const T> d) const {
    BandedMatrix out = *this;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = band_begin(i); j <= band_end(i); ++j) out.data_[index(i, j)] *= d[i];
    return out;
  }

  /// A * diag(d)
  BandedMatrix right_scaled(std::span<const T> d) const {
    BandedMatrix out = *this;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = band_begin(i); j <= band_end(i); ++j) out.data_[index(i, j)] *= d[j];
    return out;
  }

  friend BandedMatrix operator*(BandedMatrix const& a, BandedMatrix const& b) {
    check_same(a, b);
    BandedMatrix out(a.n_, a.kl_ + b.kl_, a.ku_ + b.ku_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = a.band_begin(i); k <= a.band_end(i); ++k) {
        const T aik = a.data_[a.index(i, k)];
        for (std::size_t j = b.band_begin(k); j <= b.band_end(k); ++j) out.data_[out.index(i, j)] += aik * b.data_[b.index(k, j)];
      }
    return out;
  }

  friend BandedMatrix operator+(BandedMatrix const& a, BandedMatrix const& b) { return combine(a, b, T{1}); }
  friend BandedMatrix operator-(BandedMatrix const& a, BandedMatrix const& b) { return combine(a, b, T{-1}); }

  friend BandedMatrix operator*(T s, BandedMatrix a) {
    for (auto& v : a.data_) v *= s;
    return a;
  }

  double max_abs() const {
    double m = 0;
    for (auto const& v : data_) m = std::max(m, static_cast<double>(std::abs(v)));
    return m;
  }

  /// Largest absolute row sum (infinity norm).
  double norm_inf() const {
    double m = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      double s = 0;
      for (std::size_t j = band_begin(i); j <= band_end(i); ++j) s += std::abs(data_[index(i, j)]);
      m = std::max(m, s);
    }
    return m;
  }

  std::size_t band_begin(std::size_t i) const { return i >= static_cast<std::size_t>(kl_) ? i - kl_ : 0; }
  std::size_t band_end(std::size_t i) const { return std::min(n_ - 1, i + static_cast<std::size_t>(ku_)); }

 private:
  std::size_t index(std::size_t i, std::size_t j) const {
    return static_cast<std::size_t>(static_cast<long>(j) - static_cast<long>(i) + kl_) * n_ + i;
  }

  static T conj_if(T v) {
    if constexpr (std::is_same_v<T, std::complex<double>>) return std::conj(v);
    else return v;
  }

  static void check_same(BandedMatrix const& a, BandedMatrix const& b) {
    if (a.n_ != b.n_) throw ValidationError("band matrix size mismatch");
  }

  static BandedMatrix combine(BandedMatrix const& a, BandedMatrix const& b, T sb) {
    check_same(a, b);
    BandedMatrix out(a.n_, std::max(a.kl_, b.kl_), std::max(a.ku_, b.ku_));
    for (std::size_t i = 0; i < a.n_; ++i) {
      for (std::size_t j = a.band_begin(i); j <= a.band_end(i); ++j) out.data_[out.index(i, j)] += a.data_[a.index(i, j)];
      for (std::size_t j = b.band_begin(i); j <= b.band_end(i); ++j) out.data_[out.index(i, j)] += sb * b.data_[b.index(i, j)];
    }
    return out;
  }

  std::size_t n_ = 0;
  int kl_ = 0, ku_ = 0;
  std::vector<T> data_;
};

template <class T>
double max_abs_difference(BandedMatrix<T> const& a, BandedMatrix<T> const& b) {
  return (a - b).max_abs();
}

inline BandedMatrix<complex> to_complex(BandedMatrix<double> const& a) {
  BandedMatrix<complex> out(a.size(), a.lower_bandwidth(), a.upper_bandwidth());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = a.band_begin(i); j <= a.band_end(i); ++j) out.at(i, j) = a(i, j);
  return out;
}

}  // namespace pdm
