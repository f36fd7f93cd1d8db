#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shearkit/group.hpp"
#include "shearkit/io.hpp"
#include "shearkit/lizorkin.hpp"

using namespace shearkit;

namespace {

GroupElement random_element(Rng& rng, double b_range = 5.0, double s_range = 3.0,
                            double octaves = 2.0) {
  const double t = rng.uniform(-octaves, octaves);
  const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
  return {Eigen::Vector2d{rng.uniform(-b_range, b_range), rng.uniform(-b_range, b_range)},
          rng.uniform(-s_range, s_range), sign * std::pow(2.0, t)};
}

// Mild elements keep warped supports inside the grid (the representation
// tests' stated precondition).
GroupElement random_mild_element(Rng& rng) {
  return random_element(rng, 0.5, 0.3, 0.25);
}

double element_distance(const GroupElement& g, const GroupElement& h) {
  return std::max({std::abs(g.b[0] - h.b[0]), std::abs(g.b[1] - h.b[1]), std::abs(g.s - h.s),
                   std::abs(g.a - h.a)});
}

SampledField2D band_limited_field(const Grid2D& grid, std::uint64_t seed) {
  // Spatially concentrated (decay ~ e^{-2|x|^2}) with spectrum well inside
  // Nyquist, so moderately warped copies neither alias nor wrap. The random
  // modulation is a low-order polynomial: a smooth spectrum keeps the field
  // localized.
  Rng rng(seed);
  std::array<Complex, 4> c;
  for (auto& z : c) z = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  const Grid2D freq = grid.dual();
  FrequencyField2D F = FrequencyField2D::zero(freq);
  for (Eigen::Index k2 = 0; k2 < freq.n2; ++k2)
    for (Eigen::Index k1 = 0; k1 < freq.n1; ++k1) {
      const Eigen::Vector2d xi = freq.point(k1, k2);
      const Complex mod = c[0] + c[1] * xi[0] + c[2] * xi[1] + c[3] * xi[0] * xi[1];
      F.values(k1, k2) = mod * std::exp(-0.5 * M_PI * M_PI * xi.squaredNorm());
    }
  SampledField2D f = fft_inverse(F, grid);
  f.values /= l2_norm(f);
  return f;
}

}  // namespace

TEST_CASE("shear and dilation matrices") {
  CHECK(shear_matrix(0.0).isIdentity(0.0));
  Eigen::Matrix2d n1;
  n1 << 1.0, -1.0, 0.0, 1.0;
  CHECK((shear_matrix(1.0) - n1).cwiseAbs().maxCoeff() == 0.0);
  CHECK((shear_matrix(0.3) * shear_matrix(0.45) - shear_matrix(0.75)).cwiseAbs().maxCoeff() <=
        1e-15);

  CHECK(dilation_matrix(1.0).isIdentity(0.0));
  CHECK(dilation_matrix(4.0)(0, 0) == 4.0);
  CHECK(dilation_matrix(4.0)(1, 1) == 2.0);
  for (double a : {-0.5, 0.5, -2.0, 2.0})
    CHECK(std::abs(std::abs(dilation_matrix(a).determinant()) - std::pow(std::abs(a), 1.5)) <=
          1e-15);
  CHECK_THROWS_AS(dilation_matrix(0.0), ZeroDilation);
}

TEST_CASE("group law worked examples") {
  const GroupElement g{{0.0, 0.0}, 1.0, 4.0};
  const GroupElement h{{1.0, 1.0}, 0.0, 1.0};
  const GroupElement gh = compose(g, h);
  CHECK(element_distance(gh, GroupElement{{2.0, 2.0}, 1.0, 4.0}) <= 1e-14);

  const GroupElement gi = inverse(GroupElement{{2.0, 2.0}, 1.0, 4.0});
  CHECK(element_distance(gi, GroupElement{{-1.0, -1.0}, -0.5, 0.25}) <= 1e-14);

  const GroupElement id = GroupElement::identity();
  CHECK(element_distance(compose(id, g), g) == 0.0);
  CHECK(element_distance(compose(g, id), g) == 0.0);
  CHECK(element_distance(inverse(id), id) == 0.0);
}

TEST_CASE("group axioms on random triples") {
  Rng rng(101);
  for (int i = 0; i < 100; ++i) {
    const GroupElement g = random_element(rng), h = random_element(rng), k = random_element(rng);
    CHECK(element_distance(compose(compose(g, h), k), compose(g, compose(h, k))) <= 1e-12);
    CHECK(element_distance(compose(g, inverse(g)), GroupElement::identity()) <= 1e-12);
    CHECK(element_distance(inverse(inverse(g)), g) <= 1e-12);
  }
}

TEST_CASE("haar weight") {
  CHECK(haar_weight(GroupElement::identity()) == 1.0);
  CHECK(haar_weight({{0.0, 0.0}, 0.0, 4.0}) == doctest::Approx(1.0 / 64.0).epsilon(1e-15));
  CHECK(haar_weight({{0.0, 0.0}, 0.0, -0.5}) == doctest::Approx(8.0).epsilon(1e-15));
}

TEST_CASE("left invariance of the Haar quadrature") {
  // Smooth compactly supported Phi evaluated analytically on a fine grid;
  // quadrature of Phi(g h) over h matches that of Phi(h).
  auto bump = [](double t) {
    return t <= -1.0 || t >= 1.0 ? 0.0 : std::exp(1.0 - 1.0 / (1.0 - t * t));
  };
  auto phi = [&](const GroupElement& e) {
    return bump(e.b[0] / 4.0) * bump(e.b[1] / 4.0) * bump(e.s / 1.5) *
           (e.a > 0.0 ? bump(std::log2(e.a) / 1.5) : 0.0);
  };
  const GroupElement g{{0.4, -0.3}, 0.2, std::pow(2.0, 0.25)};

  const int nb = 48, ns = 64, nt = 64;
  const double bmax = 12.0, smax = 4.0, tmax = 3.0;
  const double db = 2.0 * bmax / nb, dsv = 2.0 * smax / ns, dt = 2.0 * tmax / nt;
  double base = 0.0, shifted = 0.0;
  for (int i1 = 0; i1 < nb; ++i1)
    for (int i2 = 0; i2 < nb; ++i2)
      for (int is = 0; is < ns; ++is)
        for (int it = 0; it < nt; ++it) {
          const double a = std::pow(2.0, -tmax + (it + 0.5) * dt);
          const GroupElement h{{-bmax + (i1 + 0.5) * db, -bmax + (i2 + 0.5) * db},
                               -smax + (is + 0.5) * dsv, a};
          const double w = db * db * dsv * dt * std::log(2.0) / (a * a);
          base += w * phi(h);
          shifted += w * phi(compose(g, h));
        }
  CHECK(std::abs(base - shifted) <= 1e-3 * std::abs(base));
}

TEST_CASE("representation: identity, unitarity, homomorphism") {
  const Grid2D grid = Grid2D::symmetric(64, 8.0);
  const SampledField2D f = band_limited_field(grid, 21);

  const SampledField2D same = apply_rep_space(GroupElement::identity(), f);
  CHECK((same.values - f.values).abs().maxCoeff() <= 1e-11);

  Rng rng(22);
  for (int i = 0; i < 5; ++i) {
    const GroupElement g = random_mild_element(rng);
    const SampledField2D pf = apply_rep_space(g, f);
    CHECK(std::abs(l2_norm(pf) / l2_norm(f) - 1.0) <= 1e-6);
  }

  for (int i = 0; i < 3; ++i) {
    const GroupElement g = random_mild_element(rng);
    const GroupElement h = random_mild_element(rng);
    const SampledField2D lhs = apply_rep_space(g, apply_rep_space(h, f));
    const SampledField2D rhs = apply_rep_space(compose(g, h), f);
    CHECK((lhs.values - rhs.values).abs().maxCoeff() <= 1e-6);
  }
}

TEST_CASE("frequency form of the representation") {
  const Grid2D grid = Grid2D::symmetric(64, 8.0);
  const SampledField2D f = band_limited_field(grid, 31);
  Rng rng(32);
  for (int i = 0; i < 3; ++i) {
    const GroupElement g = random_mild_element(rng);
    const FrequencyField2D lhs = fft_forward(apply_rep_space(g, f));
    const FrequencyField2D rhs = apply_rep_freq(g, fft_forward(f));
    CHECK((lhs.values - rhs.values).abs().maxCoeff() <= 1e-5);

    // modulus independent of b
    GroupElement g0 = g;
    g0.b.setZero();
    const FrequencyField2D rhs0 = apply_rep_freq(g0, fft_forward(f));
    CHECK((rhs.values.abs() - rhs0.values.abs()).abs().maxCoeff() <= 1e-9);
  }
}
