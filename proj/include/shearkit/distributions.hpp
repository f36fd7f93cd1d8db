#pragma once

#include "shearkit/synthesis.hpp"

namespace shearkit {

/// Bivariate polynomial sum_{i,j} c(i,j) x1^i x2^j.
struct Poly2 {
  Eigen::MatrixXcd c;

  bool zero() const { return c.size() == 0; }
  int deg1() const { return zero() ? -1 : static_cast<int>(c.rows()) - 1; }
  int deg2() const { return zero() ? -1 : static_cast<int>(c.cols()) - 1; }
  Complex eval(const Eigen::Vector2d& x) const;
  /// p(M x + t) expanded in x.
  Poly2 substitute_affine(const Eigen::Matrix2d& M, const Eigen::Vector2d& t) const;

  static Poly2 monomial(int i, int j, Complex coeff = 1.0);
  static Poly2 constant(Complex v) { return monomial(0, 0, v); }
};
Poly2 operator+(const Poly2& a, const Poly2& b);
Poly2 operator*(const Poly2& a, const Poly2& b);
Poly2 operator*(Complex s, const Poly2& a);

/// c * d^deriv delta_{location}.
struct DeltaAtom {
  Complex coeff{1.0, 0.0};
  Eigen::Vector2d location{0.0, 0.0};
  MultiIndex deriv;
};

/// Registry of slowly growing functions with known growth degree and
/// closed-form Fourier transforms.
enum class RegistryKind { Gaussian, Ramp, Sinusoid, AbsNorm, PolyGaussian, Gridded };

/// One term d^deriv g of the Schwartz structure form.
struct FuncTerm {
  MultiIndex deriv;
  RegistryKind kind = RegistryKind::Gaussian;
  Poly2 poly;                       // PolyGaussian: g = poly(x) e^{-pi |x|^2}
  Eigen::Vector2d freq{0.25, 0.0};  // Sinusoid: g = cos(2 pi freq . x + phase)
  double phase = 0.0;
  SampledField2D payload;           // Gridded
};

/// f = sum of delta atoms + sum of d^deriv g terms + polynomial part.
struct LizorkinDistribution {
  std::vector<DeltaAtom> atoms;
  std::vector<FuncTerm> func_terms;
  Poly2 poly;
};

double registry_value(const FuncTerm& term, const Eigen::Vector2d& x);

/// Dual pairing <f, test>, conjugate-linear in the test (the L^2 inner
/// product extension).
Complex pair_with_test(const LizorkinDistribution& f, const SampledField2D& test);
Complex pair_with_test(const LizorkinDistribution& f, const ShearletGenerator& gen,
                       const GroupElement& g);

/// S_psi f(b,s,a) = (f, pi_{b,s,a} psi) per parameter.
std::vector<Complex> transform_distribution(const LizorkinDistribution& f,
                                            const ShearletGenerator& gen,
                                            const std::vector<GroupElement>& params);

/// The same transform sampled over a whole parameter grid through per-slice
/// frequency multipliers.
CoefficientVolume transform_distribution_volume(const LizorkinDistribution& f,
                                                const ShearletGenerator& gen,
                                                const ParamGrid& pgrid);

/// <S^t_psi Psi, test> = <Psi, S_psi test>_dmu.
Complex synthesize_distribution(const CoefficientVolume& Psi, const ShearletGenerator& gen,
                                const SampledField2D& test);

/// (1/C_{psi,phi}) int S_psi f conj(S_phi test) dmu: the pairing as an
/// absolutely convergent integral over the group.
Complex desingularized_pairing(const LizorkinDistribution& f, const ShearletGenerator& gen_psi,
                               const ShearletGenerator& gen_phi, const SampledField2D& test,
                               const ParamGrid& pgrid);

/// Canonical representative per registry kind.
LizorkinDistribution make_registry_distribution(RegistryKind kind);
const std::vector<RegistryKind>& analytic_registry();

}  // namespace shearkit
