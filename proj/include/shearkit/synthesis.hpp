#pragma once

#include "shearkit/analysis.hpp"

namespace shearkit {

/// Shearlet synthesis operator: per (s,a) an FFT of the slice over b, a
/// multiply with the warped profile and |a|^{3/4}, Haar quadrature over
/// (s,a) with compensated accumulation, one inverse FFT at the end.
SampledField2D synthesize(const CoefficientVolume& F, const ShearletGenerator& gen);

struct ReconstructionResult {
  SampledField2D field;
  double rel_l2_error = 0.0;
  Complex c_pair = 0.0;
  CoverageReport coverage;
};

/// (1/C_{psi,phi}) S_phi^t S_psi f with the relative L2 error against f.
ReconstructionResult reconstruct(const SampledField2D& f, const ShearletGenerator& gen_psi,
                                 const ShearletGenerator& gen_phi, const ParamGrid& pgrid);

}  // namespace shearkit
