#pragma once

#include "shearkit/coeffspace.hpp"
#include "shearkit/generator.hpp"

namespace shearkit {

struct CoverageReport {
  double covered_energy_fraction = 1.0;
  bool gap = false;  // > 1% of the input energy sits where every warped profile vanishes
};

/// Shearlet transform over a parameter grid: per (s,a) an inverse FFT of
/// f_hat(xi) * conj(psi_hat(a xi1, a |a|^{-1/2} (xi2 - s xi1))) * |a|^{3/4},
/// the profile sampled analytically at the warped frequencies.
CoefficientVolume transform_spectral(const SampledField2D& f, const ShearletGenerator& gen,
                                     const ParamGrid& pgrid, CoverageReport* coverage = nullptr);

/// Literal spacing-weighted Riemann sum of the defining integral, the
/// generator evaluated in space by quadrature. The slow oracle.
std::vector<Complex> transform_direct(const SampledField2D& f, const ShearletGenerator& gen,
                                      const std::vector<GroupElement>& params);

/// Pointwise spectral transform at an arbitrary group element.
Complex transform_at(const FrequencyField2D& f_hat, const ShearletGenerator& gen,
                     const GroupElement& g);

/// | ||S_psi f||^2_{L2(dmu)} - C_psi ||f||^2 | / (C_psi ||f||^2), streamed
/// over slices (no volume materialized).
double isometry_defect(const SampledField2D& f, const ShearletGenerator& gen,
                       const ParamGrid& pgrid, double c_psi = 0.0);

/// Warped-profile energy coverage of f's spectrum across the grid.
CoverageReport coverage_of(const FrequencyField2D& f_hat, const ShearletGenerator& gen,
                           const ParamGrid& pgrid);

/// Default admissibility probes inside the generator band.
std::vector<Eigen::Vector2d> default_probes(const ShearletGenerator& gen);

}  // namespace shearkit
