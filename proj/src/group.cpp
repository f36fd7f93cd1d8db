#include "shearkit/group.hpp"

#include <cmath>

namespace shearkit {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

Eigen::Matrix2d shear_matrix(double s) {
  if (!std::isfinite(s)) throw DegenerateInput("shear must be finite");
  Eigen::Matrix2d m;
  m << 1.0, -s, 0.0, 1.0;
  return m;
}

Eigen::Matrix2d dilation_matrix(double a) {
  if (a == 0.0) throw ZeroDilation("dilation_matrix(0)");
  if (!std::isfinite(a)) throw DegenerateInput("dilation must be finite");
  Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
  m(0, 0) = a;
  m(1, 1) = a / std::sqrt(std::abs(a));
  return m;
}

GroupElement compose(const GroupElement& g, const GroupElement& h) {
  const Eigen::Vector2d b = g.b + shear_matrix(g.s) * dilation_matrix(g.a) * h.b;
  const double s = g.s + std::sqrt(std::abs(g.a)) * h.s;
  return GroupElement(b, s, g.a * h.a);
}

GroupElement inverse(const GroupElement& g) {
  const double ai = 1.0 / g.a;
  const double si = -g.s / std::sqrt(std::abs(g.a));
  const Eigen::Vector2d bi =
      -(dilation_matrix(g.a).inverse() * shear_matrix(-g.s) * g.b);
  return GroupElement(bi, si, ai);
}

double haar_weight(const GroupElement& g) {
  const double aa = std::abs(g.a);
  return 1.0 / (aa * aa * aa);
}

SampledField2D apply_rep_space(const GroupElement& g, const SampledField2D& f) {
  return apply_rep_space(g, TrigInterpolant::of_field(f), f.grid);
}

SampledField2D apply_rep_space(const GroupElement& g, const TrigInterpolant& interp,
                               const Grid2D& grid) {
  const Eigen::Matrix2d warp =
      dilation_matrix(g.a).inverse() * shear_matrix(-g.s);  // A_a^{-1} N_s^{-1}
  const Eigen::Vector2d base = warp * (Eigen::Vector2d{grid.x1(0), grid.x2(0)} - g.b);
  const Eigen::Vector2d e1 = grid.spacing[0] * warp.col(0);
  const Eigen::Vector2d e2 = grid.spacing[1] * warp.col(1);
  CArray vals = interp.eval_lattice(base, e1, e2, grid.n1, grid.n2);
  vals *= std::pow(std::abs(g.a), -0.75);
  return {grid, std::move(vals)};
}

FrequencyField2D apply_rep_freq(const GroupElement& g, const FrequencyField2D& F) {
  const Eigen::Matrix2d warp = dilation_matrix(g.a) * shear_matrix(g.s).transpose();
  const Eigen::Vector2d base = warp * Eigen::Vector2d{F.grid.x1(0), F.grid.x2(0)};
  const Eigen::Vector2d e1 = F.grid.spacing[0] * warp.col(0);
  const Eigen::Vector2d e2 = F.grid.spacing[1] * warp.col(1);
  const TrigInterpolant interp = TrigInterpolant::of_frequency_field(F);
  CArray vals = interp.eval_lattice(base, e1, e2, F.grid.n1, F.grid.n2);
  const double amp = std::pow(std::abs(g.a), 0.75);
  Eigen::VectorXcd p1(F.grid.n1), p2(F.grid.n2);
  for (Eigen::Index k = 0; k < F.grid.n1; ++k)
    p1[k] = std::polar(1.0, -kTwoPi * g.b[0] * F.grid.x1(k));
  for (Eigen::Index k = 0; k < F.grid.n2; ++k)
    p2[k] = std::polar(1.0, -kTwoPi * g.b[1] * F.grid.x2(k));
  for (Eigen::Index k2 = 0; k2 < F.grid.n2; ++k2)
    for (Eigen::Index k1 = 0; k1 < F.grid.n1; ++k1) vals(k1, k2) *= amp * p1[k1] * p2[k2];
  return {F.grid, std::move(vals)};
}

}  // namespace shearkit
