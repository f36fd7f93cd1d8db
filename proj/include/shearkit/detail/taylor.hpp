#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "shearkit/errors.hpp"

namespace shearkit::detail {

/// Truncated univariate Taylor series around an expansion point:
/// f(t0 + d) = sum_k c[k] d^k. Arithmetic propagates exact derivatives.
struct TaylorSeries {
  Eigen::ArrayXd c;

  explicit TaylorSeries(int order) : c(Eigen::ArrayXd::Zero(order + 1)) {}
  int order() const { return static_cast<int>(c.size()) - 1; }

  static TaylorSeries constant(double v, int order) {
    TaylorSeries s(order);
    s.c[0] = v;
    return s;
  }
  static TaylorSeries variable(double t0, int order) {
    TaylorSeries s(order);
    s.c[0] = t0;
    if (order >= 1) s.c[1] = 1.0;
    return s;
  }
};

inline TaylorSeries operator+(const TaylorSeries& a, const TaylorSeries& b) {
  TaylorSeries r(a.order());
  r.c = a.c + b.c;
  return r;
}

inline TaylorSeries operator-(const TaylorSeries& a, const TaylorSeries& b) {
  TaylorSeries r(a.order());
  r.c = a.c - b.c;
  return r;
}

inline TaylorSeries operator*(double s, const TaylorSeries& a) {
  TaylorSeries r(a.order());
  r.c = s * a.c;
  return r;
}

inline TaylorSeries operator*(const TaylorSeries& a, const TaylorSeries& b) {
  const int n = a.order();
  TaylorSeries r(n);
  for (int k = 0; k <= n; ++k) {
    double acc = 0.0;
    for (int j = 0; j <= k; ++j) acc += a.c[j] * b.c[k - j];
    r.c[k] = acc;
  }
  return r;
}

inline TaylorSeries reciprocal(const TaylorSeries& u) {
  const int n = u.order();
  if (u.c[0] == 0.0) throw SingularDivision("series reciprocal at zero");
  TaylorSeries r(n);
  r.c[0] = 1.0 / u.c[0];
  for (int k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += u.c[j] * r.c[k - j];
    r.c[k] = -r.c[0] * acc;
  }
  return r;
}

inline TaylorSeries exp_series(const TaylorSeries& s) {
  const int n = s.order();
  TaylorSeries e(n);
  e.c[0] = std::exp(s.c[0]);
  for (int k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += static_cast<double>(j) * s.c[j] * e.c[k - j];
    e.c[k] = acc / static_cast<double>(k);
  }
  return e;
}

/// C^infty step built from e^{-1/t}: 0 for t <= 0, 1 for t >= 1.
inline double smoothstep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

inline TaylorSeries smoothstep_series(double t0, int order) {
  if (t0 <= 0.0) return TaylorSeries::constant(0.0, order);
  if (t0 >= 1.0) return TaylorSeries::constant(1.0, order);
  const TaylorSeries t = TaylorSeries::variable(t0, order);
  const TaylorSeries one_minus_t = TaylorSeries::constant(1.0, order) - t;
  const TaylorSeries a = exp_series(-1.0 * reciprocal(t));
  const TaylorSeries b = exp_series(-1.0 * reciprocal(one_minus_t));
  return a * reciprocal(a + b);
}

/// Bivariate jet of total order N around a base point:
/// f(xi0 + d) = sum_{i+j<=N} c(i,j) d1^i d2^j.
struct Jet2 {
  int n;
  Eigen::ArrayXXcd c;

  explicit Jet2(int order) : n(order), c(Eigen::ArrayXXcd::Zero(order + 1, order + 1)) {}

  static Jet2 constant(std::complex<double> v, int order) {
    Jet2 j(order);
    j.c(0, 0) = v;
    return j;
  }
  static Jet2 variable1(double v, int order) {
    Jet2 j(order);
    j.c(0, 0) = v;
    if (order >= 1) j.c(1, 0) = 1.0;
    return j;
  }
  static Jet2 variable2(double v, int order) {
    Jet2 j(order);
    j.c(0, 0) = v;
    if (order >= 1) j.c(0, 1) = 1.0;
    return j;
  }

  /// d^{(m1,m2)} f at the base point.
  std::complex<double> derivative(int m1, int m2) const {
    double fac = 1.0;
    for (int k = 2; k <= m1; ++k) fac *= k;
    for (int k = 2; k <= m2; ++k) fac *= k;
    return c(m1, m2) * fac;
  }
};

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
  Jet2 r(a.n);
  r.c = a.c + b.c;
  return r;
}

inline Jet2 operator*(std::complex<double> s, const Jet2& a) {
  Jet2 r(a.n);
  r.c = s * a.c;
  return r;
}

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
  const int n = a.n;
  Jet2 r(n);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) {
      std::complex<double> acc = 0.0;
      for (int p = 0; p <= i; ++p)
        for (int q = 0; q <= j; ++q) acc += a.c(p, q) * b.c(i - p, j - q);
      r.c(i, j) = acc;
    }
  return r;
}

/// Horner composition outer(inner) where outer is expanded around inner's value.
inline Jet2 compose(const TaylorSeries& outer, const Jet2& inner) {
  const int n = inner.n;
  Jet2 delta = inner;
  delta.c(0, 0) = 0.0;
  Jet2 res = Jet2::constant(outer.c[n], n);
  for (int k = n - 1; k >= 0; --k) {
    res = res * delta;
    res.c(0, 0) += outer.c[k];
  }
  return res;
}

/// Reciprocal of a jet with nonzero value: Horner on 1/(u0+d) = sum (-1)^k d^k / u0^{k+1}.
inline Jet2 reciprocal(const Jet2& u) {
  const int n = u.n;
  if (u.c(0, 0) == std::complex<double>(0.0)) throw SingularDivision("jet reciprocal at zero");
  Jet2 delta = u;
  delta.c(0, 0) = 0.0;
  const std::complex<double> inv0 = 1.0 / u.c(0, 0);
  std::vector<std::complex<double>> cs(static_cast<size_t>(n) + 1);
  std::complex<double> coeff = inv0;
  for (int k = 0; k <= n; ++k) {
    cs[static_cast<size_t>(k)] = coeff;
    coeff *= -inv0;
  }
  Jet2 res = Jet2::constant(cs[static_cast<size_t>(n)], n);
  for (int k = n - 1; k >= 0; --k) {
    res = res * delta;
    res.c(0, 0) += cs[static_cast<size_t>(k)];
  }
  return res;
}

inline double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

/// exp(s0 + d) = e^{s0} sum_k d^k / k!, truncated.
inline Jet2 exp_jet(const Jet2& s) {
  const int n = s.n;
  Jet2 delta = s;
  delta.c(0, 0) = 0.0;
  const std::complex<double> e0 = std::exp(s.c(0, 0));
  Jet2 res = Jet2::constant(e0 / factorial(n), n);
  for (int k = n - 1; k >= 0; --k) {
    res = res * delta;
    res.c(0, 0) += e0 / factorial(k);
  }
  return res;
}

}  // namespace shearkit::detail
