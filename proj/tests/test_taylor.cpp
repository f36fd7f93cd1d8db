#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shearkit/detail/taylor.hpp"

using namespace shearkit;
using namespace shearkit::detail;

TEST_CASE("series arithmetic reproduces known expansions") {
  const int n = 8;
  const TaylorSeries t = TaylorSeries::variable(2.0, n);
  const TaylorSeries r = reciprocal(t);  // 1/(2+d) = sum (-1)^k d^k / 2^{k+1}
  for (int k = 0; k <= n; ++k)
    CHECK(r.c[k] == doctest::Approx((k % 2 ? -1.0 : 1.0) / std::pow(2.0, k + 1)).epsilon(1e-14));

  const TaylorSeries e = exp_series(t);  // e^{2+d}
  for (int k = 0; k <= n; ++k) {
    double kfac = 1.0;
    for (int i = 2; i <= k; ++i) kfac *= i;
    CHECK(e.c[k] == doctest::Approx(std::exp(2.0) / kfac).epsilon(1e-13));
  }
}

TEST_CASE("smoothstep endpoints and interior derivatives") {
  CHECK(smoothstep(-0.5) == 0.0);
  CHECK(smoothstep(1.5) == 1.0);
  CHECK(smoothstep(0.5) == doctest::Approx(0.5).epsilon(1e-15));

  // finite differences vs series derivatives
  const int n = 4;
  for (double t0 : {0.2, 0.5, 0.8}) {
    const TaylorSeries s = smoothstep_series(t0, n);
    const double h = 1e-5;
    const double d1 = (smoothstep(t0 + h) - smoothstep(t0 - h)) / (2.0 * h);
    const double d2 =
        (smoothstep(t0 + h) - 2.0 * smoothstep(t0) + smoothstep(t0 - h)) / (h * h);
    CHECK(s.c[0] == doctest::Approx(smoothstep(t0)).epsilon(1e-14));
    CHECK(s.c[1] == doctest::Approx(d1).epsilon(1e-7));
    CHECK(2.0 * s.c[2] == doctest::Approx(d2).epsilon(1e-5));
  }
  // flat outside (0,1)
  const TaylorSeries flat = smoothstep_series(1.2, n);
  CHECK(flat.c[0] == 1.0);
  for (int k = 1; k <= n; ++k) CHECK(flat.c[k] == 0.0);
}

TEST_CASE("bivariate jets: product and composition derivatives") {
  const int n = 6;
  // f(x, y) = exp(x * y) at (0.3, -0.2): d^(i,j) known through series
  const Jet2 x = Jet2::variable1(0.3, n);
  const Jet2 y = Jet2::variable2(-0.2, n);
  const Jet2 f = exp_jet(x * y);
  // d_x d_y exp(xy) = (1 + xy) exp(xy)
  const double xy = 0.3 * -0.2;
  CHECK(f.derivative(1, 1).real() == doctest::Approx((1.0 + xy) * std::exp(xy)).epsilon(1e-12));
  // d_x^2 exp(xy) = y^2 exp(xy)
  CHECK(f.derivative(2, 0).real() == doctest::Approx(0.04 * std::exp(xy)).epsilon(1e-12));

  // reciprocal: d_x [1/(1+x^2+y^2)] = -2x/(1+x^2+y^2)^2
  const Jet2 den = Jet2::constant(1.0, n) + x * x + y * y;
  const Jet2 g = reciprocal(den);
  const double d = 1.0 + 0.09 + 0.04;
  CHECK(g.derivative(1, 0).real() == doctest::Approx(-0.6 / (d * d)).epsilon(1e-12));
}
