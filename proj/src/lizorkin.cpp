#include "shearkit/lizorkin.hpp"

#include <cmath>

#include <unsupported/Eigen/FFT>

#include "shearkit/detail/quadrature.hpp"

namespace shearkit {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Centered stencil (m+3 nodes when possible) for d^m at the zero bin of a
// sampled axis; the zero frequency is a grid node for even n.
struct AxisStencil {
  std::vector<Eigen::Index> idx;
  Eigen::ArrayXd w;
};

AxisStencil zero_bin_stencil(const Grid2D& freq, int axis, int m) {
  const Eigen::Index n = axis == 1 ? freq.n1 : freq.n2;
  const Eigen::Index k0 = n / 2;  // xi = 0
  // Symmetric (odd-width) window: odd derivatives of even data cancel exactly.
  const Eigen::Index width = std::min<Eigen::Index>(n, m + 3 + (m % 2 == 0 ? 0 : 1));
  Eigen::Index start = k0 - width / 2;
  start = std::max<Eigen::Index>(0, std::min(start, n - width));
  AxisStencil st;
  Eigen::ArrayXd nodes(width);
  for (Eigen::Index i = 0; i < width; ++i) {
    st.idx.push_back(start + i);
    nodes[i] = axis == 1 ? freq.x1(start + i) : freq.x2(start + i);
  }
  st.w = detail::fornberg_weights(0.0, nodes, m).col(m).array();
  return st;
}

}  // namespace

MomentReport moments(const SampledField2D& f, int up_to) {
  if (up_to > kMaxOrder) throw OrderTooHigh("moment order exceeds max order");
  const FrequencyField2D F = fft_forward(f);
  MomentReport rep;
  for (int m1 = 0; m1 <= up_to; ++m1)
    for (int m2 = 0; m1 + m2 <= up_to; ++m2) {
      const AxisStencil s1 = zero_bin_stencil(F.grid, 1, m1);
      const AxisStencil s2 = zero_bin_stencil(F.grid, 2, m2);
      Complex acc = 0.0;
      for (size_t i = 0; i < s1.idx.size(); ++i)
        for (size_t j = 0; j < s2.idx.size(); ++j)
          acc += s1.w[static_cast<Eigen::Index>(i)] * s2.w[static_cast<Eigen::Index>(j)] *
                 F.values(s1.idx[i], s2.idx[j]);
      acc *= std::pow(Complex(0.0, 1.0 / kTwoPi), m1 + m2);
      rep.moments[MultiIndex(m1, m2)] = acc;
      rep.max_abs = std::max(rep.max_abs, std::abs(acc));
    }
  return rep;
}

MomentReport moments_riemann(const SampledField2D& f, int up_to) {
  if (up_to > kMaxOrder) throw OrderTooHigh("moment order exceeds max order");
  MomentReport rep;
  const double w = f.grid.spacing[0] * f.grid.spacing[1];
  for (int m1 = 0; m1 <= up_to; ++m1)
    for (int m2 = 0; m1 + m2 <= up_to; ++m2) {
      Complex acc = 0.0;
      for (Eigen::Index j2 = 0; j2 < f.grid.n2; ++j2) {
        Complex col = 0.0;
        for (Eigen::Index j1 = 0; j1 < f.grid.n1; ++j1)
          col += std::pow(f.grid.x1(j1), m1) * f.values(j1, j2);
        acc += col * std::pow(f.grid.x2(j2), m2);
      }
      acc *= w;
      rep.moments[MultiIndex(m1, m2)] = acc;
      rep.max_abs = std::max(rep.max_abs, std::abs(acc));
    }
  return rep;
}

Eigen::ArrayXd directional_moments(const SampledField2D& f, int axis, int up_to) {
  if (up_to > kMaxOrder) throw OrderTooHigh("moment order exceeds max order");
  if (axis != 1 && axis != 2) throw DegenerateInput("axis must be 1 or 2");
  const FrequencyField2D F = fft_forward(f);
  const bool along1 = axis == 1;
  const Eigen::Index n_t = along1 ? f.grid.n2 : f.grid.n1;
  Eigen::ArrayXd out(up_to + 1);
  Eigen::FFT<double> fft;
  for (int m = 0; m <= up_to; ++m) {
    // D_m over the transverse line in frequency, then back to space.
    const AxisStencil st = zero_bin_stencil(F.grid, axis, m);
    Eigen::VectorXcd line = Eigen::VectorXcd::Zero(n_t);
    for (Eigen::Index t = 0; t < n_t; ++t)
      for (size_t i = 0; i < st.idx.size(); ++i)
        line[t] += st.w[static_cast<Eigen::Index>(i)] *
                   (along1 ? F.values(st.idx[i], t) : F.values(t, st.idx[i]));
    line *= std::pow(Complex(0.0, 1.0 / kTwoPi), m);
    // max over the transverse variable of |IFT(line)|; the phase conventions
    // do not affect the modulus, an unscaled inverse DFT suffices up to the
    // frequency spacing factor.
    std::vector<Complex> in(static_cast<size_t>(n_t)), spatial(static_cast<size_t>(n_t));
    for (Eigen::Index t = 0; t < n_t; ++t) in[static_cast<size_t>(t)] = line[t];
    fft.inv(spatial, in);
    const double dxi = along1 ? F.grid.spacing[1] : F.grid.spacing[0];
    double worst = 0.0;
    for (const Complex& v : spatial)
      worst = std::max(worst, std::abs(v) * dxi * static_cast<double>(n_t));
    out[m] = worst;
  }
  return out;
}

double schwartz_seminorm(const SampledField2D& f, int nu) {
  if (nu > kMaxOrder) throw OrderTooHigh("seminorm order exceeds max order");
  Eigen::ArrayXd weight(f.grid.n1 * f.grid.n2);
  for (Eigen::Index j2 = 0; j2 < f.grid.n2; ++j2)
    for (Eigen::Index j1 = 0; j1 < f.grid.n1; ++j1) {
      const double r2 = f.grid.point(j1, j2).squaredNorm();
      weight[j2 * f.grid.n1 + j1] = std::pow(1.0 + r2, 0.5 * nu);
    }
  const FrequencyField2D F = fft_forward(f);
  double sup = 0.0;
  for (int m1 = 0; m1 <= nu; ++m1)
    for (int m2 = 0; m1 + m2 <= nu; ++m2) {
      const SampledField2D d =
          (m1 == 0 && m2 == 0) ? f : fft_inverse(derivative_in_frequency(F, MultiIndex(m1, m2)), f.grid);
      const Eigen::Map<const Eigen::ArrayXcd> flat(d.values.data(), d.values.size());
      sup = std::max(sup, (flat.abs() * weight).maxCoeff());
    }
  return sup;
}

SampledField2D translate(const SampledField2D& f, const Eigen::Vector2d& b, Warnings* warnings) {
  FrequencyField2D F = fft_forward(f);
  for (Eigen::Index k2 = 0; k2 < F.grid.n2; ++k2)
    for (Eigen::Index k1 = 0; k1 < F.grid.n1; ++k1)
      F.values(k1, k2) *= std::polar(1.0, -kTwoPi * (b[0] * F.grid.x1(k1) + b[1] * F.grid.x2(k2)));
  SampledField2D out = fft_inverse(F, f.grid);
  if (warnings && boundary_max_abs(out) > 1e-8) warnings->support_escape = true;
  return out;
}

SampledField2D dilate(const SampledField2D& f, double a, Warnings* warnings) {
  if (a == 0.0) throw ZeroDilation("dilate(f, 0)");
  const TrigInterpolant interp = TrigInterpolant::of_field(f);
  const double inv = 1.0 / a;
  const Eigen::Vector2d base{f.grid.x1(0) * inv, f.grid.x2(0) * inv};
  const Eigen::Vector2d e1{f.grid.spacing[0] * inv, 0.0};
  const Eigen::Vector2d e2{0.0, f.grid.spacing[1] * inv};
  CArray vals = interp.eval_lattice(base, e1, e2, f.grid.n1, f.grid.n2);
  vals /= std::abs(a);
  SampledField2D out{f.grid, std::move(vals)};
  if (warnings && boundary_max_abs(out) > 1e-8) warnings->support_escape = true;
  return out;
}

AntiderivativeResult antiderivative_oracle(const SampledField2D& f, const MultiIndex& m,
                                           double moment_tol, double guard_tol) {
  const MomentReport rep = moments(f, std::min(kMaxOrder, m.order() + 2));
  if (rep.max_abs > moment_tol)
    throw NotLizorkin("input fails the vanishing-moment surrogate");
  if (m.order() == 0) return {f, 1.0};

  FrequencyField2D F = fft_forward(f);
  const double guard1 = guard_tol > 0.0 ? guard_tol : 0.5 * F.grid.spacing[0];
  const double guard2 = guard_tol > 0.0 ? guard_tol : 0.5 * F.grid.spacing[1];

  // The division is only legal where the spectrum has already died out.
  double leak = 0.0;
  for (Eigen::Index k2 = 0; k2 < F.grid.n2; ++k2)
    for (Eigen::Index k1 = 0; k1 < F.grid.n1; ++k1) {
      const bool guarded = (m.m1 > 0 && std::abs(F.grid.x1(k1)) < guard1 + 1e-15) ||
                           (m.m2 > 0 && std::abs(F.grid.x2(k2)) < guard2 + 1e-15);
      if (guarded) leak = std::max(leak, std::abs(F.values(k1, k2)));
    }
  if (leak > 1e-10 * std::max(1.0, F.values.abs().maxCoeff()))
    throw SingularDivision("spectrum does not vanish on the guarded axes");

  for (Eigen::Index k2 = 0; k2 < F.grid.n2; ++k2)
    for (Eigen::Index k1 = 0; k1 < F.grid.n1; ++k1) {
      const bool guarded = (m.m1 > 0 && std::abs(F.grid.x1(k1)) < guard1 + 1e-15) ||
                           (m.m2 > 0 && std::abs(F.grid.x2(k2)) < guard2 + 1e-15);
      if (guarded) {
        F.values(k1, k2) = 0.0;
        continue;
      }
      const Complex d = std::pow(Complex(0.0, kTwoPi * F.grid.x1(k1)), m.m1) *
                        std::pow(Complex(0.0, kTwoPi * F.grid.x2(k2)), m.m2);
      F.values(k1, k2) /= d;
    }
  AntiderivativeResult res{fft_inverse(F, f.grid), 0.0};
  const double rho_f = schwartz_seminorm(f, 6);
  const double rho_g = schwartz_seminorm(res.field, 1);
  res.seminorm_ratio = rho_g / std::max(rho_f, 1e-300);
  return res;
}

bool is_lizorkin_surrogate(const SampledField2D& f, double tol) {
  return moments(f, 6).max_abs <= tol;
}

double boundary_max_abs(const SampledField2D& f) {
  double m = 0.0;
  for (Eigen::Index j = 0; j < f.grid.n1; ++j) {
    m = std::max(m, std::abs(f.values(j, 0)));
    m = std::max(m, std::abs(f.values(j, f.grid.n2 - 1)));
  }
  for (Eigen::Index j = 0; j < f.grid.n2; ++j) {
    m = std::max(m, std::abs(f.values(0, j)));
    m = std::max(m, std::abs(f.values(f.grid.n1 - 1, j)));
  }
  return m;
}

}  // namespace shearkit
