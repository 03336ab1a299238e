#pragma once

#include <concepts>
#include <stdexcept>
#include <utility>
#include <vector>

#include "schlicht/rational.hpp"

namespace schlicht {

template <class C>
class PowerSeries;

/// Coefficient-ring hooks used by the generic series algorithms.
///
/// The BigRational specialization covers ordinary series; the PowerSeries
/// specialization below makes series-over-series work, which is what the
/// bivariate expansion in the Grunsky test oracle runs on.
template <class C>
struct coeff_ops;

template <>
struct coeff_ops<BigRational> {
  static BigRational zero_like(const BigRational&) { return {}; }
  static BigRational one_like(const BigRational&) { return BigRational(1); }
  static bool is_zero(const BigRational& x) { return x.is_zero(); }
  static bool is_one(const BigRational& x) { return x.is_one(); }
  static BigRational scale(const BigRational& x, const BigRational& r) {
    return x * r;
  }
};

/// Truncated power series with exact coefficients.
///
/// A series of order N stores coefficients of z^0..z^N and represents its
/// function mod z^{N+1}. Binary operations truncate to the smaller order, so
/// precision claims are always explicit. All arithmetic is exact.
template <class C = BigRational>
class PowerSeries {
 public:
  explicit PowerSeries(std::vector<C> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty())
      throw std::invalid_argument("PowerSeries: empty coefficient list");
  }

  static PowerSeries zeros(int order)
    requires std::default_initializable<C>
  {
    if (order < 0) throw std::invalid_argument("PowerSeries: negative order");
    return PowerSeries(std::vector<C>(static_cast<size_t>(order) + 1));
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }

  const C& operator[](int k) const { return c_.at(static_cast<size_t>(k)); }
  void set(int k, C v) { c_.at(static_cast<size_t>(k)) = std::move(v); }

  const std::vector<C>& coefficients() const { return c_; }

  PowerSeries truncated(int order) const {
    if (order < 0 || order > this->order())
      throw std::invalid_argument("PowerSeries: bad truncation order");
    return PowerSeries(
        std::vector<C>(c_.begin(), c_.begin() + order + 1));
  }

  friend bool operator==(const PowerSeries& a, const PowerSeries& b) {
    return a.c_ == b.c_;
  }

 private:
  std::vector<C> c_;  // c_[k] multiplies z^k; size = order + 1
};

template <class C>
struct coeff_ops<PowerSeries<C>> {
  static PowerSeries<C> zero_like(const PowerSeries<C>& s) {
    std::vector<C> v;
    v.reserve(static_cast<size_t>(s.order()) + 1);
    for (int k = 0; k <= s.order(); ++k)
      v.push_back(coeff_ops<C>::zero_like(s[0]));
    return PowerSeries<C>(std::move(v));
  }
  static PowerSeries<C> one_like(const PowerSeries<C>& s) {
    PowerSeries<C> z = zero_like(s);
    z.set(0, coeff_ops<C>::one_like(s[0]));
    return z;
  }
  static bool is_zero(const PowerSeries<C>& s) {
    for (int k = 0; k <= s.order(); ++k)
      if (!coeff_ops<C>::is_zero(s[k])) return false;
    return true;
  }
  static bool is_one(const PowerSeries<C>& s) {
    if (!coeff_ops<C>::is_one(s[0])) return false;
    for (int k = 1; k <= s.order(); ++k)
      if (!coeff_ops<C>::is_zero(s[k])) return false;
    return true;
  }
  static PowerSeries<C> scale(const PowerSeries<C>& s, const BigRational& r) {
    std::vector<C> v;
    v.reserve(static_cast<size_t>(s.order()) + 1);
    for (int k = 0; k <= s.order(); ++k)
      v.push_back(coeff_ops<C>::scale(s[k], r));
    return PowerSeries<C>(std::move(v));
  }
};

template <class C>
PowerSeries<C> operator+(const PowerSeries<C>& a, const PowerSeries<C>& b) {
  int n = std::min(a.order(), b.order());
  std::vector<C> v;
  v.reserve(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) v.push_back(a[k] + b[k]);
  return PowerSeries<C>(std::move(v));
}

template <class C>
PowerSeries<C> operator-(const PowerSeries<C>& a, const PowerSeries<C>& b) {
  int n = std::min(a.order(), b.order());
  std::vector<C> v;
  v.reserve(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) v.push_back(a[k] - b[k]);
  return PowerSeries<C>(std::move(v));
}

template <class C>
PowerSeries<C> scale(const PowerSeries<C>& s, const BigRational& r) {
  return coeff_ops<PowerSeries<C>>::scale(s, r);
}

/// Cauchy product truncated to the smaller operand order.
template <class C>
PowerSeries<C> series_multiply(const PowerSeries<C>& a,
                               const PowerSeries<C>& b) {
  int n = std::min(a.order(), b.order());
  std::vector<C> v;
  v.reserve(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    C s = coeff_ops<C>::zero_like(a[0]);
    for (int i = 0; i <= k; ++i) s = s + a[i] * b[k - i];
    v.push_back(std::move(s));
  }
  return PowerSeries<C>(std::move(v));
}

template <class C>
PowerSeries<C> operator*(const PowerSeries<C>& a, const PowerSeries<C>& b) {
  return series_multiply(a, b);
}

/// exp of a series with zero constant term, by the standard recursion
/// c_0 = 1, n c_n = sum_{k=0}^{n-1} (n-k) b_{n-k} c_k.
template <class C>
PowerSeries<C> exp_series(const PowerSeries<C>& g) {
  if (!coeff_ops<C>::is_zero(g[0]))
    throw std::invalid_argument("exp_series: nonzero constant term");
  int n = g.order();
  std::vector<C> h;
  h.reserve(static_cast<size_t>(n) + 1);
  h.push_back(coeff_ops<C>::one_like(g[0]));
  for (int m = 1; m <= n; ++m) {
    C s = coeff_ops<C>::zero_like(g[0]);
    for (int k = 0; k < m; ++k)
      s = s + coeff_ops<C>::scale(g[m - k] * h[static_cast<size_t>(k)],
                                  BigRational(m - k));
    h.push_back(coeff_ops<C>::scale(s, BigRational(1, m)));
  }
  return PowerSeries<C>(std::move(h));
}

/// log of a series with constant term one: the exact inverse of exp_series.
/// Solves the exp recursion for b given c, so exp_series(result) == p.
template <class C>
PowerSeries<C> series_log1p_composed(const PowerSeries<C>& p) {
  if (!coeff_ops<C>::is_one(p[0]))
    throw std::invalid_argument("series_log1p_composed: constant term != 1");
  int n = p.order();
  std::vector<C> b;
  b.reserve(static_cast<size_t>(n) + 1);
  b.push_back(coeff_ops<C>::zero_like(p[0]));
  for (int m = 1; m <= n; ++m) {
    C s = coeff_ops<C>::zero_like(p[0]);
    for (int k = 1; k < m; ++k)
      s = s + coeff_ops<C>::scale(b[static_cast<size_t>(m - k)] * p[k],
                                  BigRational(m - k));
    b.push_back(p[m] - coeff_ops<C>::scale(s, BigRational(1, m)));
  }
  return PowerSeries<C>(std::move(b));
}

/// Multiplicative inverse of a series with constant term one.
template <class C>
PowerSeries<C> series_inverse(const PowerSeries<C>& p) {
  if (!coeff_ops<C>::is_one(p[0]))
    throw std::invalid_argument("series_inverse: constant term != 1");
  int n = p.order();
  std::vector<C> v;
  v.reserve(static_cast<size_t>(n) + 1);
  v.push_back(coeff_ops<C>::one_like(p[0]));
  for (int m = 1; m <= n; ++m) {
    C s = coeff_ops<C>::zero_like(p[0]);
    for (int k = 1; k <= m; ++k) s = s + p[k] * v[static_cast<size_t>(m - k)];
    v.push_back(coeff_ops<C>::zero_like(p[0]) - s);
  }
  return PowerSeries<C>(std::move(v));
}

/// arctan z = z - z^3/3 + z^5/5 - ...
inline PowerSeries<> arctan_series(int order) {
  if (order < 1) throw std::invalid_argument("arctan_series: order < 1");
  PowerSeries<> s = PowerSeries<>::zeros(order);
  for (int n = 0; 2 * n + 1 <= order; ++n)
    s.set(2 * n + 1, BigRational(n % 2 == 0 ? 1 : -1, 2 * n + 1));
  return s;
}

/// Q_a(z) = exp(2a arctan z), the logarithmic derivative z F_a'/F_a.
inline PowerSeries<> q_a_series(const BigRational& a, int order) {
  if (order < 1) throw std::invalid_argument("q_a_series: order < 1");
  return exp_series(scale(arctan_series(order), BigRational(2) * a));
}

/// log(F_a(z)/z) = sum_{n>=1} (b_n/n) z^n, with b_n the coefficients of Q_a.
inline PowerSeries<> log_fa_over_z_series(const BigRational& a, int order) {
  if (order < 0)
    throw std::invalid_argument("log_fa_over_z_series: negative order");
  PowerSeries<> g = PowerSeries<>::zeros(order);
  if (order >= 1) {
    PowerSeries<> q = q_a_series(a, order);
    for (int n = 1; n <= order; ++n)
      g.set(n, q[n] * BigRational(1, n));
  }
  return g;
}

/// F_a(z) = z exp(sum (b_n/n) z^n): the normalized solution of
/// z F'(z)/F(z) = Q_a(z), so F_a(0) = 0 and F_a'(0) = 1.
inline PowerSeries<> f_a_series(const BigRational& a, int order) {
  if (order < 1) throw std::invalid_argument("f_a_series: order < 1");
  PowerSeries<> e = exp_series(log_fa_over_z_series(a, order - 1));
  PowerSeries<> f = PowerSeries<>::zeros(order);
  for (int k = 0; k < order; ++k) f.set(k + 1, e[k]);
  return f;
}

/// Koebe function z/(1-z)^2 = sum n z^n; the classical extremal function.
inline PowerSeries<> koebe_series(int order) {
  if (order < 1) throw std::invalid_argument("koebe_series: order < 1");
  PowerSeries<> s = PowerSeries<>::zeros(order);
  for (int n = 1; n <= order; ++n) s.set(n, BigRational(n));
  return s;
}

}  // namespace schlicht
