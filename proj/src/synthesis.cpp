#include "shearkit/synthesis.hpp"

#include <cmath>

#include "shearkit/fft.hpp"

namespace shearkit {

namespace {

Eigen::Vector2d warp_freq(double s, double a, const Eigen::Vector2d& xi) {
  return {a * xi[0], a / std::sqrt(std::abs(a)) * (xi[1] - s * xi[0])};
}

struct KahanArray {
  CArray sum;
  CArray comp;
  explicit KahanArray(Eigen::Index n1, Eigen::Index n2)
      : sum(CArray::Zero(n1, n2)), comp(CArray::Zero(n1, n2)) {}
  void add(const CArray& v) {
    const CArray y = v - comp;
    const CArray t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

SampledField2D synthesize(const CoefficientVolume& F, const ShearletGenerator& gen) {
  const ParamGrid& pg = F.pgrid;
  for (Eigen::Index ia = 0; ia < pg.na(); ++ia)
    if (pg.a_values[ia] == 0.0) throw ZeroDilation("parameter grid contains a = 0");

  const Grid2D freq = pg.b_grid.dual();
  KahanArray acc(freq.n1, freq.n2);
  CArray term(freq.n1, freq.n2);
  for (Eigen::Index ia = 0; ia < pg.na(); ++ia) {
    const double a = pg.a_values[ia];
    const double amp = std::pow(std::abs(a), 0.75);
    for (Eigen::Index is = 0; is < pg.ns(); ++is) {
      const double s = pg.s_values[is];
      const double w = pg.haar_weight(is, ia) * amp;
      const FrequencyField2D slice_hat = fft_forward({pg.b_grid, F.slice(is, ia)});
      for (Eigen::Index k2 = 0; k2 < freq.n2; ++k2)
        for (Eigen::Index k1 = 0; k1 < freq.n1; ++k1) {
          const Complex m = gen.profile(warp_freq(s, a, {freq.x1(k1), freq.x2(k2)}));
          term(k1, k2) = slice_hat.values(k1, k2) * m * w;
        }
      acc.add(term);
    }
  }
  return fft_inverse({freq, acc.sum}, pg.b_grid);
}

ReconstructionResult reconstruct(const SampledField2D& f, const ShearletGenerator& gen_psi,
                                 const ShearletGenerator& gen_phi, const ParamGrid& pgrid) {
  if (!pgrid.b_grid.same_as(f.grid)) throw GridMismatch("b-grid must equal the field grid");
  const AdmissibilityReport adm = admissibility(gen_psi, gen_phi, default_probes(gen_psi));
  require_admissible(adm);

  const FrequencyField2D fhat = fft_forward(f);
  ReconstructionResult res;
  res.c_pair = adm.c_psi;
  res.coverage = coverage_of(fhat, gen_psi, pgrid);

  // Fused multiplier: S_phi^t(S_psi f) has spectrum
  // f_hat(xi) sum_{s,a} w_haar |a|^{3/2} conj(psi_hat(W xi)) phi_hat(W xi).
  KahanArray mult(fhat.grid.n1, fhat.grid.n2);
  CArray term(fhat.grid.n1, fhat.grid.n2);
  for (Eigen::Index ia = 0; ia < pgrid.na(); ++ia) {
    const double a = pgrid.a_values[ia];
    const double amp = std::pow(std::abs(a), 1.5);
    for (Eigen::Index is = 0; is < pgrid.ns(); ++is) {
      const double s = pgrid.s_values[is];
      const double w = pgrid.haar_weight(is, ia) * amp;
      for (Eigen::Index k2 = 0; k2 < fhat.grid.n2; ++k2)
        for (Eigen::Index k1 = 0; k1 < fhat.grid.n1; ++k1) {
          const Eigen::Vector2d wxi = warp_freq(s, a, {fhat.grid.x1(k1), fhat.grid.x2(k2)});
          term(k1, k2) = std::conj(gen_psi.profile(wxi)) * gen_phi.profile(wxi) * w;
        }
      mult.add(term);
    }
  }

  FrequencyField2D rec_hat{fhat.grid, (fhat.values * mult.sum) / res.c_pair};
  res.field = fft_inverse(rec_hat, f.grid);
  const double nf = l2_norm(f);
  if (nf == 0.0) throw DegenerateInput("reconstruction error undefined for the zero field");
  SampledField2D diff{f.grid, res.field.values - f.values};
  res.rel_l2_error = l2_norm(diff) / nf;
  return res;
}

}  // namespace shearkit
