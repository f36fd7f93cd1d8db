#pragma once

#include <vector>

#include "shearkit/group.hpp"
#include "shearkit/types.hpp"

namespace shearkit {

/// Parameter grid over the group: a b-grid, uniform s samples, and dyadic
/// |a| samples on both sign branches with trapezoid-in-log Haar weights.
struct ParamGrid {
  Grid2D b_grid;
  Eigen::ArrayXd s_values;   // ascending, uniform
  Eigen::ArrayXd a_values;   // ascending, never 0
  Eigen::ArrayXd s_weights;  // ds with halved ends
  Eigen::ArrayXd a_weights;  // ln2 * dt * |a|^{-2}, halved at branch ends

  Eigen::Index ns() const { return s_values.size(); }
  Eigen::Index na() const { return a_values.size(); }
  double haar_weight(Eigen::Index is, Eigen::Index ia) const {
    return s_weights[is] * a_weights[ia];
  }

  /// J octaves away from |a| = 1, per_octave samples per octave, s in
  /// [-S, S] with spacing ds.
  static ParamGrid make(const Grid2D& b_grid, int octaves, int per_octave, double s_max,
                        double ds, bool both_branches = true);
};

struct CoefficientVolume {
  ParamGrid pgrid;
  std::vector<CArray> slices;  // index is + ns * ia, each (n1, n2) over b

  CArray& slice(Eigen::Index is, Eigen::Index ia) { return slices[is + pgrid.ns() * ia]; }
  const CArray& slice(Eigen::Index is, Eigen::Index ia) const {
    return slices[is + pgrid.ns() * ia];
  }
  static CoefficientVolume zero(const ParamGrid& pg);
};

struct SeminormIndex {
  int k1 = 0, k2 = 0, l = 0, m = 0;          // weight exponents
  int a1 = 0, a2 = 0, beta = 0, gamma = 0;   // derivative orders
};

/// sup over the grid of <b1>^k1 <b2>^k2 <s>^l (|a|^m + |a|^{-m})
/// |d_a^gamma d_s^beta d_b2^a2 d_b1^a1 Phi|. b-derivatives spectral, s and a
/// by finite differences on the sampled volume (a per sign branch).
double seminorm(const CoefficientVolume& vol, const SeminormIndex& idx);

struct SeminormEntry {
  SeminormIndex idx;
  double value = 0.0;
  Eigen::Index argmax_b1 = 0, argmax_b2 = 0, argmax_s = 0, argmax_a = 0;
};

/// All derivative-free seminorms with weight indices <= cap in one sweep.
std::vector<SeminormEntry> seminorm_weight_table(const CoefficientVolume& vol, int cap);

struct GrowthBound {
  double c = 0.0;
  int nu1 = 0, nu2 = 0, nu3 = 0;

  double weight(const GroupElement& g) const;
  bool dominates(const GroupElement& g, Complex value) const;
};

/// Least integer exponents (minimal nu1+nu2+nu3, then lexicographic) <= 6
/// whose bound C <b1>^nu1 <b2>^nu1 <s>^nu2 (|a|^nu3 + |a|^-nu3)/2 dominates
/// all samples without slack beyond 5% of the saturated constant.
GrowthBound fit_growth_bound(const std::vector<std::pair<GroupElement, Complex>>& samples);

/// Spacing- and Haar-weighted sum of values * |a|^weight_exponent.
Complex haar_integral(const CoefficientVolume& vol, double weight_exponent = 0.0);
/// int A conj(B) dmu and the plain bilinear variant.
Complex haar_inner(const CoefficientVolume& a, const CoefficientVolume& b);
Complex haar_bilinear(const CoefficientVolume& a, const CoefficientVolume& b);
double l2_norm_dmu(const CoefficientVolume& vol);

}  // namespace shearkit
