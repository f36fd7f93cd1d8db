#include "shearkit/analysis.hpp"

#include <cmath>

#include "shearkit/fft.hpp"

namespace shearkit {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

Eigen::Vector2d warp_freq(double s, double a, const Eigen::Vector2d& xi) {
  return {a * xi[0], a / std::sqrt(std::abs(a)) * (xi[1] - s * xi[0])};
}

}  // namespace

CoefficientVolume transform_spectral(const SampledField2D& f, const ShearletGenerator& gen,
                                     const ParamGrid& pgrid, CoverageReport* coverage) {
  if (!pgrid.b_grid.same_as(f.grid)) throw GridMismatch("b-grid must equal the field grid");
  for (Eigen::Index ia = 0; ia < pgrid.na(); ++ia)
    if (pgrid.a_values[ia] == 0.0) throw ZeroDilation("parameter grid contains a = 0");

  const FrequencyField2D fhat = fft_forward(f);
  CoefficientVolume vol = CoefficientVolume::zero(pgrid);
  Eigen::ArrayXXd covered = Eigen::ArrayXXd::Zero(fhat.grid.n1, fhat.grid.n2);

  FrequencyField2D slice_hat = FrequencyField2D::zero(fhat.grid);
  for (Eigen::Index ia = 0; ia < pgrid.na(); ++ia) {
    const double a = pgrid.a_values[ia];
    const double amp = std::pow(std::abs(a), 0.75);
    for (Eigen::Index is = 0; is < pgrid.ns(); ++is) {
      const double s = pgrid.s_values[is];
      for (Eigen::Index k2 = 0; k2 < fhat.grid.n2; ++k2)
        for (Eigen::Index k1 = 0; k1 < fhat.grid.n1; ++k1) {
          const Complex m = gen.profile(warp_freq(s, a, {fhat.grid.x1(k1), fhat.grid.x2(k2)}));
          covered(k1, k2) += std::norm(m);
          slice_hat.values(k1, k2) = fhat.values(k1, k2) * std::conj(m) * amp;
        }
      vol.slice(is, ia) = fft_inverse(slice_hat, f.grid).values;
    }
  }

  if (coverage) {
    double total = 0.0, missed = 0.0;
    for (Eigen::Index k2 = 0; k2 < fhat.grid.n2; ++k2)
      for (Eigen::Index k1 = 0; k1 < fhat.grid.n1; ++k1) {
        const double e = std::norm(fhat.values(k1, k2));
        total += e;
        if (covered(k1, k2) == 0.0) missed += e;
      }
    coverage->covered_energy_fraction = total > 0.0 ? 1.0 - missed / total : 1.0;
    coverage->gap = total > 0.0 && missed / total > 0.01;
  }
  return vol;
}

std::vector<Complex> transform_direct(const SampledField2D& f, const ShearletGenerator& gen,
                                      const std::vector<GroupElement>& params) {
  std::vector<Complex> out;
  out.reserve(params.size());
  const double hb = f.grid.spacing[0] * f.grid.spacing[1];
  for (const GroupElement& g : params) {
    const Eigen::Matrix2d warp = dilation_matrix(g.a).inverse() * shear_matrix(-g.s);
    const Eigen::Vector2d base = warp * (Eigen::Vector2d{f.grid.x1(0), f.grid.x2(0)} - g.b);
    const Eigen::Vector2d e1 = f.grid.spacing[0] * warp.col(0);
    const Eigen::Vector2d e2 = f.grid.spacing[1] * warp.col(1);
    const CArray psi = eval_space_lattice(gen, base, e1, e2, f.grid.n1, f.grid.n2);
    const Complex acc = (f.values * psi.conjugate()).sum();
    out.push_back(std::pow(std::abs(g.a), -0.75) * hb * acc);
  }
  return out;
}

Complex transform_at(const FrequencyField2D& fhat, const ShearletGenerator& gen,
                     const GroupElement& g) {
  const double w = fhat.grid.spacing[0] * fhat.grid.spacing[1];
  Complex acc = 0.0;
  for (Eigen::Index k2 = 0; k2 < fhat.grid.n2; ++k2)
    for (Eigen::Index k1 = 0; k1 < fhat.grid.n1; ++k1) {
      const Eigen::Vector2d xi{fhat.grid.x1(k1), fhat.grid.x2(k2)};
      const Complex m = gen.profile(warp_freq(g.s, g.a, xi));
      if (m == Complex(0.0)) continue;
      acc += fhat.values(k1, k2) * std::conj(m) * std::polar(1.0, kTwoPi * g.b.dot(xi));
    }
  return std::pow(std::abs(g.a), 0.75) * w * acc;
}

double isometry_defect(const SampledField2D& f, const ShearletGenerator& gen,
                       const ParamGrid& pgrid, double c_psi) {
  const double nf = l2_norm(f);
  if (nf == 0.0) throw DegenerateInput("isometry defect undefined for the zero field");
  if (c_psi <= 0.0) {
    const AdmissibilityReport rep = admissibility(gen, gen, default_probes(gen));
    require_admissible(rep);
    c_psi = rep.c_psi.real();
  }

  // Parseval per slice: the b-sum of |slice|^2 equals the frequency-side sum,
  // so the volume never needs to be materialized.
  const FrequencyField2D fhat = fft_forward(f);
  const double wxi = fhat.grid.spacing[0] * fhat.grid.spacing[1];
  double total = 0.0;
  for (Eigen::Index ia = 0; ia < pgrid.na(); ++ia) {
    const double a = pgrid.a_values[ia];
    const double amp = std::pow(std::abs(a), 1.5);
    for (Eigen::Index is = 0; is < pgrid.ns(); ++is) {
      const double s = pgrid.s_values[is];
      double acc = 0.0;
      for (Eigen::Index k2 = 0; k2 < fhat.grid.n2; ++k2)
        for (Eigen::Index k1 = 0; k1 < fhat.grid.n1; ++k1) {
          const Complex m = gen.profile(warp_freq(s, a, {fhat.grid.x1(k1), fhat.grid.x2(k2)}));
          if (m == Complex(0.0)) continue;
          acc += std::norm(fhat.values(k1, k2)) * std::norm(m);
        }
      total += pgrid.haar_weight(is, ia) * amp * wxi * acc;
    }
  }
  const double target = c_psi * nf * nf;
  return std::abs(total - target) / target;
}

CoverageReport coverage_of(const FrequencyField2D& fhat, const ShearletGenerator& gen,
                           const ParamGrid& pgrid) {
  CoverageReport rep;
  double total = 0.0, missed = 0.0;
  for (Eigen::Index k2 = 0; k2 < fhat.grid.n2; ++k2)
    for (Eigen::Index k1 = 0; k1 < fhat.grid.n1; ++k1) {
      const Eigen::Vector2d xi{fhat.grid.x1(k1), fhat.grid.x2(k2)};
      const double e = std::norm(fhat.values(k1, k2));
      total += e;
      if (e == 0.0) continue;
      bool hit = false;
      for (Eigen::Index ia = 0; ia < pgrid.na() && !hit; ++ia)
        for (Eigen::Index is = 0; is < pgrid.ns() && !hit; ++is)
          hit = gen.profile(warp_freq(pgrid.s_values[is], pgrid.a_values[ia], xi)) != Complex(0.0);
      if (!hit) missed += e;
    }
  rep.covered_energy_fraction = total > 0.0 ? 1.0 - missed / total : 1.0;
  rep.gap = total > 0.0 && missed / total > 0.01;
  return rep;
}

std::vector<Eigen::Vector2d> default_probes(const ShearletGenerator& gen) {
  double lo = 0.5, hi = 2.0;
  const auto& p = gen.params();
  if (auto it = p.find("r1_in"); it != p.end()) lo = it->second;
  if (auto it = p.find("r1_out"); it != p.end()) hi = it->second;
  const double mid = std::sqrt(lo * hi);
  return {{mid, 0.0}, {0.85 * mid, 0.25 * mid}, {-1.1 * mid, 0.3 * mid}};
}

}  // namespace shearkit
