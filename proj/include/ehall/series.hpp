#pragma once

#include "ehall/scalar_ops.hpp"

#include <gmpxx.h>

#include <stdexcept>
#include <vector>

namespace ehall {

// Power series truncated after z^order. T needs +, -, * and the hooks in scalar_ops.hpp.
// Coefficients need not commute with each other, but exp/log assume they do.
template <class T>
class TruncatedSeries {
 public:
  explicit TruncatedSeries(int order) : c_(order + 1) {}
  TruncatedSeries(int order, const T& zero) : c_(order + 1, zero) {}

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const T& operator[](int i) const { return c_.at(i); }
  T& operator[](int i) { return c_.at(i); }
  const std::vector<T>& coefficients() const { return c_; }

  TruncatedSeries operator+(const TruncatedSeries& o) const {
    check(o);
    TruncatedSeries r = *this;
    for (int i = 0; i <= order(); ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
  }

  TruncatedSeries operator-(const TruncatedSeries& o) const {
    check(o);
    TruncatedSeries r = *this;
    for (int i = 0; i <= order(); ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
  }

  TruncatedSeries operator*(const TruncatedSeries& o) const {
    check(o);
    TruncatedSeries r = *this;
    for (int n = 0; n <= order(); ++n) {
      T acc = c_[0] * o.c_[n];
      for (int k = 1; k <= n; ++k) acc = acc + c_[k] * o.c_[n - k];
      r.c_[n] = acc;
    }
    return r;
  }

  bool operator==(const TruncatedSeries& o) const { return c_ == o.c_; }

  // Multiply the coefficient of z^i by the i-th power's substitution z -> z^k, dropping overflow.
  TruncatedSeries substitute_power(int k) const {
    TruncatedSeries r(order(), c_[0] - c_[0]);
    for (int i = 0; i * k <= order(); ++i) r.c_[i * k] = c_[i];
    return r;
  }

 private:
  void check(const TruncatedSeries& o) const {
    if (o.order() != order()) throw std::invalid_argument("TruncatedSeries: order mismatch");
  }
  std::vector<T> c_;
};

// exp(g) with g(0) = 0, via n f_n = sum_k k g_k f_{n-k}.
template <class T>
TruncatedSeries<T> series_exp(const TruncatedSeries<T>& g, const T& one) {
  if (!is_zero_of(g[0])) throw std::domain_error("series_exp: constant term must vanish");
  int N = g.order();
  TruncatedSeries<T> f(N, g[0]);
  f[0] = one;
  for (int n = 1; n <= N; ++n) {
    T acc = g[0];
    for (int k = 1; k <= n; ++k) {
      if (is_zero_of(g[k])) continue;
      acc = acc + scaled_by(T(g[k] * f[n - k]), mpq_class(k));
    }
    f[n] = scaled_by(acc, mpq_class(1, n));
  }
  return f;
}

// log(f) with f(0) = 1, via n g_n = n f_n - sum_{k<n} k g_k f_{n-k}.
template <class T>
TruncatedSeries<T> series_log(const TruncatedSeries<T>& f, const T& one) {
  if (!(f[0] == one)) throw std::domain_error("series_log: constant term must be 1");
  int N = f.order();
  T zero = f[0] - f[0];
  TruncatedSeries<T> g(N, zero);
  for (int n = 1; n <= N; ++n) {
    T acc = scaled_by(f[n], mpq_class(n));
    for (int k = 1; k < n; ++k) {
      if (is_zero_of(g[k])) continue;
      acc = acc - scaled_by(T(g[k] * f[n - k]), mpq_class(k));
    }
    g[n] = scaled_by(acc, mpq_class(1, n));
  }
  return g;
}

}  // namespace ehall
