#pragma once

#include <vector>

#include "shearkit/types.hpp"

namespace shearkit {

/// Unitary discrete model of F f(xi) = \int f(x) e^{-2 pi i xi x} dx:
/// spacing-weighted DFT onto the centered dual grid. fft_inverse is its
/// exact inverse; Parseval holds to machine precision.
FrequencyField2D fft_forward(const SampledField2D& f);
SampledField2D fft_inverse(const FrequencyField2D& F);
SampledField2D fft_inverse(const FrequencyField2D& F, const Grid2D& target);

/// d^m f by multiplication with (2 pi i xi)^m in frequency.
SampledField2D spectral_derivative(const SampledField2D& f, const MultiIndex& m);
FrequencyField2D derivative_in_frequency(const FrequencyField2D& F, const MultiIndex& m);

double l2_norm(const SampledField2D& f);
double l2_norm(const FrequencyField2D& F);
Complex inner_product(const SampledField2D& f, const SampledField2D& g);

/// Evaluates the trigonometric (Fourier-series) interpolant of a sampled
/// field at arbitrary points. Works in either domain: a spatial field is
/// represented through its frequency coefficients and vice versa.
class TrigInterpolant {
public:
  static TrigInterpolant of_field(const SampledField2D& f);
  static TrigInterpolant of_frequency_field(const FrequencyField2D& F);

  Complex eval(const Eigen::Vector2d& t) const;

  /// Batch evaluation over the affine lattice t(i1,i2) = base + i1 e1 + i2 e2.
  CArray eval_lattice(const Eigen::Vector2d& base, const Eigen::Vector2d& e1,
                      const Eigen::Vector2d& e2, Eigen::Index m1, Eigen::Index m2) const;

private:
  TrigInterpolant(Grid2D nodes, CArray coeffs, double sign)
      : nodes_(nodes), coeffs_(std::move(coeffs)), sign_(sign) {}

  Grid2D nodes_;   // lattice carrying the expansion nodes p_k
  CArray coeffs_;  // c_k; value(t) = sum_k c_k e^{sign * 2 pi i p_k . t}
  double sign_;
};

}  // namespace shearkit
