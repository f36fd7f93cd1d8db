#include "shearkit/fft.hpp"

#include <unsupported/Eigen/FFT>

namespace shearkit {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Spacing-weighted DFT along the first index of v between a source lattice
// (s_src, o_src) and a destination lattice (s_dst, o_dst) with s_src * s_dst = 1/n:
//   out[t] = s_src * e^{dir 2pi i o_src (o_dst + t s_dst)}
//            * sum_i v[i] e^{dir 2pi i o_dst s_src i} e^{dir 2pi i t i / n}.
// dir = -1 realizes F(xi_t) = s_src sum_i v[i] e^{-2pi i xi_t x_i}; dir = +1 the mirror.
void transform_axis1(CArray& v, Eigen::Index n, double s_src, double o_src, double s_dst,
                     double o_dst, int dir) {
  Eigen::FFT<double> fft;
  const double sgn = static_cast<double>(dir);
  Eigen::VectorXcd pre(n), post(n);
  for (Eigen::Index i = 0; i < n; ++i)
    pre[i] = std::polar(1.0, sgn * kTwoPi * o_dst * s_src * static_cast<double>(i));
  const double amp = s_src * (dir > 0 ? static_cast<double>(n) : 1.0);
  for (Eigen::Index t = 0; t < n; ++t)
    post[t] = amp * std::polar(1.0, sgn * kTwoPi * o_src * (o_dst + static_cast<double>(t) * s_dst));

  const Eigen::Index cols = v.cols();
  std::vector<Complex> in(static_cast<size_t>(n)), out(static_cast<size_t>(n));
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) in[static_cast<size_t>(r)] = v(r, c) * pre[r];
    if (dir < 0)
      fft.fwd(out, in);
    else
      fft.inv(out, in);  // Eigen scales by 1/n, compensated in amp
    for (Eigen::Index r = 0; r < n; ++r) v(r, c) = out[static_cast<size_t>(r)] * post[r];
  }
}

CArray transform2d(const CArray& in, const Grid2D& src, const Grid2D& dst, int dir) {
  CArray v = in;
  transform_axis1(v, src.n1, src.spacing[0], src.origin[0], dst.spacing[0], dst.origin[0], dir);
  v = v.transpose().eval();
  transform_axis1(v, src.n2, src.spacing[1], src.origin[1], dst.spacing[1], dst.origin[1], dir);
  return v.transpose().eval();
}

}  // namespace

FrequencyField2D fft_forward(const SampledField2D& f) {
  check_finite(f.values, "field");
  if (f.values.rows() != f.grid.n1 || f.values.cols() != f.grid.n2)
    throw GridMismatch("value shape does not match grid");
  const Grid2D dual = f.grid.dual();
  return {dual, transform2d(f.values, f.grid, dual, -1)};
}

SampledField2D fft_inverse(const FrequencyField2D& F) {
  return fft_inverse(F, F.grid.dual());
}

SampledField2D fft_inverse(const FrequencyField2D& F, const Grid2D& target) {
  check_finite(F.values, "frequency field");
  if (F.values.rows() != F.grid.n1 || F.values.cols() != F.grid.n2)
    throw GridMismatch("value shape does not match grid");
  if (!target.dual().same_as(F.grid))
    throw GridMismatch("target grid is not dual to the frequency grid");
  return {target, transform2d(F.values, F.grid, target, +1)};
}

SampledField2D spectral_derivative(const SampledField2D& f, const MultiIndex& m) {
  if (m.order() == 0) return f;
  FrequencyField2D F = fft_forward(f);
  F = derivative_in_frequency(F, m);
  return fft_inverse(F, f.grid);
}

FrequencyField2D derivative_in_frequency(const FrequencyField2D& F, const MultiIndex& m) {
  FrequencyField2D out = F;
  for (Eigen::Index k2 = 0; k2 < F.grid.n2; ++k2) {
    const Complex w2 = std::pow(Complex(0.0, kTwoPi * F.grid.x2(k2)), m.m2);
    for (Eigen::Index k1 = 0; k1 < F.grid.n1; ++k1) {
      const Complex w1 = std::pow(Complex(0.0, kTwoPi * F.grid.x1(k1)), m.m1);
      out.values(k1, k2) *= w1 * w2;
    }
  }
  return out;
}

double l2_norm(const SampledField2D& f) {
  return std::sqrt(f.grid.spacing[0] * f.grid.spacing[1] * f.values.abs2().sum());
}

double l2_norm(const FrequencyField2D& F) {
  return std::sqrt(F.grid.spacing[0] * F.grid.spacing[1] * F.values.abs2().sum());
}

Complex inner_product(const SampledField2D& f, const SampledField2D& g) {
  if (!f.grid.same_as(g.grid)) throw GridMismatch("inner product needs matching grids");
  return f.grid.spacing[0] * f.grid.spacing[1] * (f.values * g.values.conjugate()).sum();
}

TrigInterpolant TrigInterpolant::of_field(const SampledField2D& f) {
  FrequencyField2D F = fft_forward(f);
  const double w = F.grid.spacing[0] * F.grid.spacing[1];
  return TrigInterpolant(F.grid, (F.values * w).eval(), +1.0);
}

TrigInterpolant TrigInterpolant::of_frequency_field(const FrequencyField2D& F) {
  SampledField2D f = fft_inverse(F);
  const double w = f.grid.spacing[0] * f.grid.spacing[1];
  return TrigInterpolant(f.grid, (f.values * w).eval(), -1.0);
}

Complex TrigInterpolant::eval(const Eigen::Vector2d& t) const {
  Eigen::VectorXcd e1(nodes_.n1);
  for (Eigen::Index k = 0; k < nodes_.n1; ++k)
    e1[k] = std::polar(1.0, sign_ * kTwoPi * nodes_.x1(k) * t[0]);
  Complex acc = 0.0;
  for (Eigen::Index k2 = 0; k2 < nodes_.n2; ++k2) {
    Complex inner = 0.0;
    for (Eigen::Index k1 = 0; k1 < nodes_.n1; ++k1) inner += coeffs_(k1, k2) * e1[k1];
    acc += inner * std::polar(1.0, sign_ * kTwoPi * nodes_.x2(k2) * t[1]);
  }
  return acc;
}

CArray TrigInterpolant::eval_lattice(const Eigen::Vector2d& base, const Eigen::Vector2d& e1,
                                     const Eigen::Vector2d& e2, Eigen::Index m1,
                                     Eigen::Index m2) const {
  const Eigen::Index total = nodes_.n1 * nodes_.n2;
  const Eigen::Index chunk = std::min<Eigen::Index>(4096, total);
  Eigen::MatrixXcd result = Eigen::MatrixXcd::Zero(m1, m2);
  Eigen::MatrixXcd A(m1, chunk), B(chunk, m2);
  for (Eigen::Index q0 = 0; q0 < total; q0 += chunk) {
    const Eigen::Index nb = std::min(chunk, total - q0);
    for (Eigen::Index q = 0; q < nb; ++q) {
      const Eigen::Index k1 = (q0 + q) % nodes_.n1;
      const Eigen::Index k2 = (q0 + q) / nodes_.n1;
      const Eigen::Vector2d p{nodes_.x1(k1), nodes_.x2(k2)};
      const Complex c0 = coeffs_(k1, k2) * std::polar(1.0, sign_ * kTwoPi * p.dot(base));
      const Complex w1 = std::polar(1.0, sign_ * kTwoPi * p.dot(e1));
      const Complex w2 = std::polar(1.0, sign_ * kTwoPi * p.dot(e2));
      Complex acc = c0;
      for (Eigen::Index i = 0; i < m1; ++i) {
        A(i, q) = acc;
        acc *= w1;
      }
      acc = 1.0;
      for (Eigen::Index i = 0; i < m2; ++i) {
        B(q, i) = acc;
        acc *= w2;
      }
    }
    result.noalias() += A.leftCols(nb) * B.topRows(nb);
  }
  return result.array();
}

}  // namespace shearkit
