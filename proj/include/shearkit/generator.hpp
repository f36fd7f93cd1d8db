#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "shearkit/detail/taylor.hpp"
#include "shearkit/types.hpp"

namespace shearkit {

/// Axis-aligned frequency rectangle.
struct FreqRect {
  Eigen::Vector2d lo;
  Eigen::Vector2d hi;
};

enum class ConeSide { Both, Positive, Negative };

namespace detail {
struct Profile;
}

/// An analytic frequency-domain generator profile, evaluable with exact
/// partial derivatives anywhere. Immutable after construction.
class ShearletGenerator {
public:
  Complex profile(const Eigen::Vector2d& xi) const;
  detail::Jet2 profile_jet(const Eigen::Vector2d& xi, int order) const;

  const std::vector<FreqRect>& freq_support() const { return support_; }
  /// Radius r0 of the excluded strip |xi1| <= r0 (0 for non-Lizorkin profiles).
  double strip_radius() const { return strip_radius_; }
  bool lizorkin() const { return strip_radius_ > 0.0; }

  const std::map<std::string, double>& params() const { return params_; }
  const std::string& kind() const { return kind_; }

  ShearletGenerator() = default;
  ShearletGenerator(std::shared_ptr<const detail::Profile> impl, std::string kind,
                    std::map<std::string, double> params);

  std::shared_ptr<const detail::Profile> impl() const { return impl_; }

private:
  std::shared_ptr<const detail::Profile> impl_;
  std::vector<FreqRect> support_;
  double strip_radius_ = 0.0;
  std::string kind_;
  std::map<std::string, double> params_;
};

/// Meyer-type cone bump psi_hat(xi) = w(|xi1|) v(xi2/xi1): w a C^infty bump
/// equal to 1 on [band[1], band[2]] and 0 outside [band[0], band[3]]; v a
/// C^infty bump supported on [-cone_halfwidth, cone_halfwidth] with a
/// plateau around 0.
ShearletGenerator make_meyer_shearlet(const std::array<double, 4>& band, double cone_halfwidth);

/// General cone generator: v is centered at cone_center with plateau
/// half-width plateau, support half-width cone_halfwidth; side restricts the
/// xi1 sign branch.
ShearletGenerator make_cone_generator(const std::array<double, 4>& band, double cone_center,
                                      double cone_halfwidth, double plateau,
                                      ConeSide side = ConeSide::Both);

/// Gaussian e^{-pi |xi|^2}: the non-Lizorkin control profile.
ShearletGenerator make_gaussian_profile();

ShearletGenerator conjugate(const ShearletGenerator& g);
ShearletGenerator linear_combination(const std::vector<std::pair<Complex, ShearletGenerator>>& terms);

/// d^deriv psi_hat at xi (exact, zero outside the support).
Complex eval_profile(const ShearletGenerator& gen, const Eigen::Vector2d& xi,
                     const MultiIndex& deriv);

/// d^deriv psi(x) = int (2 pi i xi)^deriv psi_hat(xi) e^{2 pi i x xi} d xi by
/// adaptive tensor Gauss-Legendre over the support rectangles.
Complex eval_space(const ShearletGenerator& gen, const Eigen::Vector2d& x,
                   const MultiIndex& deriv = {}, double tol = 1e-9);
Eigen::ArrayXcd eval_space_batch(const ShearletGenerator& gen, const Eigen::Matrix2Xd& points,
                                 const MultiIndex& deriv = {}, double tol = 1e-9);
/// Batch over the affine lattice x(i1,i2) = base + i1 e1 + i2 e2.
CArray eval_space_lattice(const ShearletGenerator& gen, const Eigen::Vector2d& base,
                          const Eigen::Vector2d& e1, const Eigen::Vector2d& e2,
                          Eigen::Index m1, Eigen::Index m2, const MultiIndex& deriv = {},
                          double tol = 1e-9);

struct AdmissibilityReport {
  Complex c_psi = 0.0;                  // method_a value, the adopted constant
  Complex method_a = 0.0;               // frequency-plane integral
  std::vector<Complex> method_b;        // (s,a)-integral per probe frequency
  double max_discrepancy = 0.0;         // max relative |method_a - method_b|
  double probe_spread = 0.0;            // relative spread across probes
  bool divergent = false;               // dyadic-shell tail failed to decay
  bool admissible = false;
};

/// Cross-checked admissibility constant C_{psi,phi}. Returns a report; use
/// require_admissible to escalate failure into an error.
AdmissibilityReport admissibility(const ShearletGenerator& psi, const ShearletGenerator& phi,
                                  const std::vector<Eigen::Vector2d>& probe_xis);

inline const AdmissibilityReport& require_admissible(const AdmissibilityReport& r) {
  if (!r.admissible) throw NotAdmissible("generator pair fails the admissibility check");
  return r;
}

/// Min/max of |eta1| over the support rectangles (min is 0 when the support
/// meets the xi1 = 0 axis).
std::pair<double, double> eta1_absolute_bounds(const ShearletGenerator& gen);

}  // namespace shearkit
