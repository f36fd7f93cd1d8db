#pragma once

#include "shearkit/fft.hpp"
#include "shearkit/types.hpp"

namespace shearkit {

/// A point (b, s, a) of the shearlet group R^2 x R x R^x. a = 0 is rejected
/// at construction; all components must be finite.
struct GroupElement {
  Eigen::Vector2d b{0.0, 0.0};
  double s = 0.0;
  double a = 1.0;

  GroupElement() = default;
  GroupElement(const Eigen::Vector2d& b_, double s_, double a_) : b(b_), s(s_), a(a_) {
    if (a == 0.0) throw ZeroDilation("group element needs a != 0");
    if (!b.allFinite() || !std::isfinite(s) || !std::isfinite(a))
      throw DegenerateInput("group element components must be finite");
  }
  GroupElement(double b1, double b2, double s_, double a_)
      : GroupElement(Eigen::Vector2d{b1, b2}, s_, a_) {}

  static GroupElement identity() { return GroupElement(); }
};

Eigen::Matrix2d shear_matrix(double s);
Eigen::Matrix2d dilation_matrix(double a);

/// Group law (b,s,a)(b',s',a') = (b + N_s A_a b', s + |a|^{1/2} s', a a').
GroupElement compose(const GroupElement& g, const GroupElement& h);
GroupElement inverse(const GroupElement& g);

/// Left Haar density |a|^{-3}.
double haar_weight(const GroupElement& g);

/// pi_{b,s,a} f(x) = |a|^{-3/4} f(A_a^{-1} N_s^{-1} (x - b)), resampled on
/// f's grid through the field's trigonometric interpolant.
SampledField2D apply_rep_space(const GroupElement& g, const SampledField2D& f);
SampledField2D apply_rep_space(const GroupElement& g, const TrigInterpolant& interp,
                               const Grid2D& grid);

/// Frequency form: |a|^{3/4} e^{-2 pi i b xi} F(A_a tN_s xi).
FrequencyField2D apply_rep_freq(const GroupElement& g, const FrequencyField2D& F);

}  // namespace shearkit
