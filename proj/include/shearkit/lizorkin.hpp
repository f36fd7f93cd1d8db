#pragma once

#include <map>

#include "shearkit/fft.hpp"
#include "shearkit/types.hpp"

namespace shearkit {

struct MomentReport {
  std::map<MultiIndex, Complex> moments;
  double max_abs = 0.0;
};

/// mu_m(f) = int x^m f(x) dx for all |m| <= up_to, through the exact
/// identity mu_m = (i/2pi)^{|m|} d^m f_hat(0) with centered stencils on the
/// sampled spectrum. Exact zeros for strip-supported spectra; the literal
/// spacing-weighted sum (moments_riemann) loses the oscillatory cancellation
/// to boundary truncation at high orders.
MomentReport moments(const SampledField2D& f, int up_to);
MomentReport moments_riemann(const SampledField2D& f, int up_to);

/// Per-line integrals int x_j^m f dx_j, aggregated as the max modulus over
/// the transverse variable; entry m of the returned array. Computed from
/// d^m f_hat on the xi_j = 0 line.
Eigen::ArrayXd directional_moments(const SampledField2D& f, int axis, int up_to);

/// rho_nu(f) = sup over grid nodes and |m| <= nu of <x>^nu |d^m f(x)|,
/// derivatives by spectral differentiation.
double schwartz_seminorm(const SampledField2D& f, int nu);

SampledField2D translate(const SampledField2D& f, const Eigen::Vector2d& b,
                         Warnings* warnings = nullptr);

/// Per-axis dilation D_a f(x) = |a|^{-1} f(x/a) (the 1-parameter dilation
/// applied to both axes; unitary on L^2).
SampledField2D dilate(const SampledField2D& f, double a, Warnings* warnings = nullptr);

struct AntiderivativeResult {
  SampledField2D field;
  double seminorm_ratio = 0.0;  // rho_1(g) / rho_6(f), the measured Lemma constant
};

/// Spectral antiderivative: g with g_hat = f_hat / ((2 pi i xi_1)^{m1} (2 pi i xi_2)^{m2}),
/// frequency bins inside the guard strip |xi_j| < guard zeroed. Admitted
/// inputs vanish there, so the singularity is removable.
AntiderivativeResult antiderivative_oracle(const SampledField2D& f, const MultiIndex& m,
                                           double moment_tol = 1e-6, double guard_tol = -1.0);

/// Surrogate Lizorkin membership test: moments up to order 6 below tol.
bool is_lizorkin_surrogate(const SampledField2D& f, double tol = 1e-6);

double boundary_max_abs(const SampledField2D& f);

}  // namespace shearkit
