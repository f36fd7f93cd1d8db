#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shearkit/fft.hpp"
#include "shearkit/io.hpp"

using namespace shearkit;

namespace {

SampledField2D random_smooth_field(const Grid2D& grid, std::uint64_t seed) {
  // Low-frequency random spectrum with a Gaussian envelope: smooth and
  // strongly decaying in space.
  Rng rng(seed);
  const Grid2D freq = grid.dual();
  FrequencyField2D F = FrequencyField2D::zero(freq);
  for (Eigen::Index k2 = 0; k2 < freq.n2; ++k2)
    for (Eigen::Index k1 = 0; k1 < freq.n1; ++k1) {
      const double r2 = freq.point(k1, k2).squaredNorm();
      F.values(k1, k2) =
          Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)) * std::exp(-6.0 * r2);
    }
  return fft_inverse(F, grid);
}

}  // namespace

TEST_CASE("zero field transforms to zero") {
  const Grid2D g = Grid2D::symmetric(16, 4.0);
  const FrequencyField2D F = fft_forward(SampledField2D::zero(g));
  CHECK(F.values.abs().maxCoeff() == 0.0);
}

TEST_CASE("centered Gaussian is self-dual") {
  const Grid2D g = Grid2D::symmetric(64, 8.0);
  const SampledField2D f = make_gaussian_field(g);
  const FrequencyField2D F = fft_forward(f);
  // Frequency aliases of the sampled Gaussian sit at |xi -+ 4| and reach
  // e^{-4 pi} ~ 3.5e-6 near the Nyquist ring; away from it the discrete
  // transform matches the self-dual value to 1e-8.
  double err_inner = 0.0, err_ring = 0.0;
  for (Eigen::Index k2 = 0; k2 < F.grid.n2; ++k2)
    for (Eigen::Index k1 = 0; k1 < F.grid.n1; ++k1) {
      const Eigen::Vector2d xi = F.grid.point(k1, k2);
      const double e = std::abs(F.values(k1, k2) - std::exp(-M_PI * xi.squaredNorm()));
      const bool inner = xi.cwiseAbs().maxCoeff() <= 1.5;
      (inner ? err_inner : err_ring) = std::max(inner ? err_inner : err_ring, e);
    }
  CHECK(err_inner <= 1e-8);
  CHECK(err_ring <= 1e-5);
}

TEST_CASE("round trip and Parseval at machine precision") {
  const Grid2D g = Grid2D::symmetric(48, 6.0);
  const SampledField2D f = random_smooth_field(g, 7);
  const FrequencyField2D F = fft_forward(f);
  const SampledField2D back = fft_inverse(F, g);
  CHECK((back.values - f.values).abs().maxCoeff() <= 1e-12);
  CHECK(std::abs(l2_norm(f) - l2_norm(F)) <= 1e-12 * l2_norm(f));
}

TEST_CASE("spectral derivative matches central differences") {
  // The O(h^2) truncation of the central difference needs a well-resolved
  // field: a wide Gaussian on a fine grid keeps it below 1e-4.
  const Grid2D g = Grid2D::symmetric(512, 25.6);
  SampledField2D f = SampledField2D::zero(g);
  for (Eigen::Index j2 = 0; j2 < g.n2; ++j2)
    for (Eigen::Index j1 = 0; j1 < g.n1; ++j1)
      f.values(j1, j2) = std::exp(-M_PI * g.point(j1, j2).squaredNorm() / 64.0);
  const SampledField2D d1 = spectral_derivative(f, MultiIndex(1, 0));
  double sup = 0.0;
  for (Eigen::Index j2 = 0; j2 < g.n2; ++j2)
    for (Eigen::Index j1 = 1; j1 + 1 < g.n1; ++j1) {
      const Complex fd =
          (f.values(j1 + 1, j2) - f.values(j1 - 1, j2)) / (2.0 * g.spacing[0]);
      sup = std::max(sup, std::abs(fd - d1.values(j1, j2)));
    }
  CHECK(sup <= 1e-4);
}

TEST_CASE("trig interpolant reproduces grid values and shifts") {
  const Grid2D g = Grid2D::symmetric(32, 4.0);
  const SampledField2D f = random_smooth_field(g, 3);
  const TrigInterpolant interp = TrigInterpolant::of_field(f);
  CHECK(std::abs(interp.eval(g.point(5, 9)) - f.values(5, 9)) <= 1e-12);

  // eval_lattice against pointwise eval on a warped lattice
  const Eigen::Vector2d base{-1.3, 0.4};
  const Eigen::Vector2d e1{0.21, 0.03};
  const Eigen::Vector2d e2{-0.02, 0.19};
  const CArray vals = interp.eval_lattice(base, e1, e2, 5, 4);
  for (Eigen::Index i = 0; i < 5; ++i)
    for (Eigen::Index j = 0; j < 4; ++j) {
      const Complex direct = interp.eval(base + double(i) * e1 + double(j) * e2);
      CHECK(std::abs(vals(i, j) - direct) <= 1e-11);
    }
}
