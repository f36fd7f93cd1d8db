#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shearkit/analysis.hpp"
#include "shearkit/io.hpp"
#include "shearkit/lizorkin.hpp"
#include "test_support.hpp"

using namespace shearkit;
using testsupport::direct_transform_block;
using testsupport::modulated_gaussian;

namespace {

const std::array<double, 4> kBand{0.5, 0.75, 1.5, 2.0};

ShearletGenerator default_gen() { return make_meyer_shearlet(kBand, 1.0); }

// Hermite-type field scaled to live inside [sigma-band]; Gaussian decay in
// space makes warped copies wrap-free.
SampledField2D scaled_hermite(const Grid2D& grid, double sigma2) {
  const Grid2D freq = grid.dual();
  FrequencyField2D F = FrequencyField2D::zero(freq);
  for (Eigen::Index k2 = 0; k2 < freq.n2; ++k2)
    for (Eigen::Index k1 = 0; k1 < freq.n1; ++k1) {
      const Eigen::Vector2d xi = freq.point(k1, k2);
      F.values(k1, k2) = std::pow(xi[0] * xi[1], 2) * std::exp(-M_PI * sigma2 * xi.squaredNorm());
    }
  SampledField2D f = fft_inverse(F, grid);
  f.values /= l2_norm(f);
  return f;
}

}  // namespace

TEST_CASE("zero field transforms to the zero volume") {
  const Grid2D grid = Grid2D::symmetric(16, 4.0);
  const ParamGrid pg = ParamGrid::make(grid, 1, 2, 1.0, 0.5);
  const CoefficientVolume vol = transform_spectral(SampledField2D::zero(grid), default_gen(), pg);
  for (const auto& s : vol.slices) CHECK(s.abs().maxCoeff() == 0.0);
}

TEST_CASE("spectral transform matches the direct-quadrature oracle") {
  // Comparison over a 16 x 16 grid of translations for 5 (s,a) pairs. The
  // field has Gaussian tails, the box is wide enough that the spectral
  // path's kernel periodization sits below tolerance, and the warped bands
  // plus the field band stay below 1/h so the Riemann sum is alias-free.
  const Grid2D grid = Grid2D::symmetric(128, 16.0);
  const SampledField2D f = modulated_gaussian(grid, 4.0);
  const ShearletGenerator psi = default_gen();
  const ParamGrid pg = ParamGrid::make(grid, 1, 6, 0.5, 0.25);
  const CoefficientVolume vol = transform_spectral(f, psi, pg);

  double scale = 0.0;
  for (const auto& sl : vol.slices) scale = std::max(scale, sl.abs().maxCoeff());
  const std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs{
      {2, 19}, {0, 22}, {4, 25}, {3, 0}, {1, 3}};  // |a| in [1, 2], both signs
  double worst = 0.0;
  for (const auto& [is, ia] : pairs) {
    const CArray direct =
        direct_transform_block(f, psi, pg.s_values[is], pg.a_values[ia], 16, 2, 8.0);
    for (Eigen::Index i2 = 0; i2 < 16; ++i2)
      for (Eigen::Index i1 = 0; i1 < 16; ++i1) {
        const auto [b1, b2] = testsupport::block_b_index(grid, 16, 2, i1, i2);
        worst = std::max(worst, std::abs(direct(i1, i2) - vol.slice(is, ia)(b1, b2)));
      }
  }
  CHECK(worst <= 1e-4 * scale);

  // self-coefficient: S_psi(pi_g psi_grid)(g) = ||psi||^2
  const Grid2D big = Grid2D::symmetric(128, 16.0);
  const Grid2D bigf = big.dual();
  FrequencyField2D P = FrequencyField2D::zero(bigf);
  for (Eigen::Index k2 = 0; k2 < bigf.n2; ++k2)
    for (Eigen::Index k1 = 0; k1 < bigf.n1; ++k1)
      P.values(k1, k2) = psi.profile(bigf.point(k1, k2));
  const SampledField2D psi_grid = fft_inverse(P, big);
  const GroupElement g{{0.4, -0.2}, 0.3, 1.25};
  const SampledField2D pg_psi = apply_rep_space(g, psi_grid);
  const std::vector<Complex> self = transform_direct(pg_psi, psi, {g});
  const double n2 = l2_norm(psi_grid) * l2_norm(psi_grid);
  CHECK(std::abs(self[0] - n2) <= 1e-4 * n2);

  // frequency-disjoint pair gives zero: at a = 16 the warped profile lives
  // in |xi1| <= 1/8 where the bump spectrum has died off.
  const Grid2D dg = Grid2D::symmetric(64, 8.0);
  const SampledField2D fd = modulated_gaussian(dg, 8.0);
  const GroupElement far{{0.0, 0.0}, 0.0, 16.0};
  const std::vector<Complex> zero = transform_direct(fd, psi, {far});
  CHECK(std::abs(zero[0]) <= 1e-8);
}

TEST_CASE("covariance under the group action") {
  const Grid2D grid = Grid2D::symmetric(128, 16.0);
  const SampledField2D f = modulated_gaussian(grid, 32.0);
  const ShearletGenerator psi = default_gen();
  const FrequencyField2D fhat = fft_forward(f);

  Rng rng(71);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const GroupElement g{{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)},
                         rng.uniform(-0.3, 0.3),
                         (rng.uniform() < 0.5 ? -1.0 : 1.0) *
                             std::pow(2.0, rng.uniform(-0.25, 0.25))};
    const FrequencyField2D pif_hat = fft_forward(apply_rep_space(g, f));
    for (int k = 0; k < 6; ++k) {
      const GroupElement h{{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)},
                           rng.uniform(-0.75, 0.75),
                           (rng.uniform() < 0.5 ? -1.0 : 1.0) *
                               std::pow(2.0, rng.uniform(-0.75, 0.75))};
      const Complex lhs = transform_at(pif_hat, psi, h);
      const Complex rhs = transform_at(fhat, psi, compose(inverse(g), h));
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  CHECK(worst <= 1e-5);
}

TEST_CASE("sesquilinearity in signal and generator") {
  const Grid2D grid = Grid2D::symmetric(32, 4.0);
  const SampledField2D f1 = scaled_hermite(grid, 1.0);
  SampledField2D f2 = f1;
  f2.values = f2.values * Complex(0.3, -1.1) + 0.05;
  const ShearletGenerator psi = default_gen();
  const ShearletGenerator phi = make_cone_generator(kBand, 0.2, 0.8, 0.4);
  const FrequencyField2D f1h = fft_forward(f1), f2h = fft_forward(f2);

  const Complex alpha{0.7, -0.4}, beta{-1.2, 0.9};
  const GroupElement g{{0.5, -0.3}, 0.4, 1.4};

  // linear in f
  FrequencyField2D combo = f1h;
  combo.values = alpha * f1h.values + beta * f2h.values;
  const Complex lhs = transform_at(combo, psi, g);
  const Complex rhs = alpha * transform_at(f1h, psi, g) + beta * transform_at(f2h, psi, g);
  CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));

  // conjugate-linear in the generator
  const ShearletGenerator gcombo = linear_combination({{alpha, psi}, {beta, phi}});
  const Complex lhs2 = transform_at(f1h, gcombo, g);
  const Complex rhs2 = std::conj(alpha) * transform_at(f1h, psi, g) +
                       std::conj(beta) * transform_at(f1h, phi, g);
  CHECK(std::abs(lhs2 - rhs2) <= 1e-10 * std::max(1.0, std::abs(rhs2)));
}

TEST_CASE("isometry defect and degenerate inputs") {
  const Config cfg;
  const Grid2D grid = cfg.make_grid();
  const ParamGrid pg = cfg.make_pgrid();
  const ShearletGenerator psi = cfg.make_generator();
  const SampledField2D f = make_band_covered_field(grid, 42);

  const double defect = isometry_defect(f, psi, pg);
  CHECK(defect <= 1e-3);

  CHECK_THROWS_AS(isometry_defect(SampledField2D::zero(grid), psi, pg), DegenerateInput);
  CHECK_THROWS_AS(isometry_defect(f, make_gaussian_profile(), pg), NotAdmissible);
}

TEST_CASE("coverage gap detection") {
  const Grid2D grid = Grid2D::symmetric(64, 8.0);
  // Spectrum in |xi1| in [0.08, 0.2]: outside every warped support when the
  // dilation range is one octave.
  const Grid2D freq = grid.dual();
  FrequencyField2D F = FrequencyField2D::zero(freq);
  for (Eigen::Index k2 = 0; k2 < freq.n2; ++k2)
    for (Eigen::Index k1 = 0; k1 < freq.n1; ++k1) {
      const Eigen::Vector2d xi = freq.point(k1, k2);
      if (std::abs(xi[0]) < 0.08 || std::abs(xi[0]) > 0.2 || std::abs(xi[1]) > 0.3) continue;
      F.values(k1, k2) = 1.0;
    }
  const SampledField2D f = fft_inverse(F, grid);
  const ParamGrid narrow = ParamGrid::make(grid, 1, 4, 2.0, 0.25);
  const CoverageReport rep = coverage_of(fft_forward(f), default_gen(), narrow);
  CHECK(rep.gap);
  CHECK(rep.covered_energy_fraction <= 0.01);

  CoverageReport good;
  transform_spectral(make_band_covered_field(grid, 7), default_gen(),
                     ParamGrid::make(grid, 3, 2, 3.0, 0.5), &good);
  CHECK_FALSE(good.gap);
  CHECK(good.covered_energy_fraction >= 0.999);
}
