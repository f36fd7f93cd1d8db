#include "shearkit/distributions.hpp"

#include <cmath>
#include <map>

#include "shearkit/detail/quadrature.hpp"
#include "shearkit/fft.hpp"
#include "shearkit/lizorkin.hpp"

namespace shearkit {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

Eigen::Vector2d warp_freq(double s, double a, const Eigen::Vector2d& xi) {
  return {a * xi[0], a / std::sqrt(std::abs(a)) * (xi[1] - s * xi[0])};
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// d_x^{(d1,d2)} [psi(M(x - b))] = sum coeff_k (d^k psi)(M(x - b)); y = M(x-b)
// gives d/dx_i = sum_j M(j,i) d/dy_j.
std::vector<std::pair<MultiIndex, double>> chain_rule_terms(const Eigen::Matrix2d& M,
                                                            const MultiIndex& d) {
  std::map<std::pair<int, int>, double> acc;
  for (int i = 0; i <= d.m1; ++i)
    for (int j = 0; j <= d.m2; ++j) {
      const double c = binomial(d.m1, i) * std::pow(M(0, 0), i) * std::pow(M(1, 0), d.m1 - i) *
                       binomial(d.m2, j) * std::pow(M(0, 1), j) * std::pow(M(1, 1), d.m2 - j);
      if (c == 0.0) continue;
      acc[{i + j, (d.m1 - i) + (d.m2 - j)}] += c;
    }
  std::vector<std::pair<MultiIndex, double>> out;
  for (const auto& [k, c] : acc) out.emplace_back(MultiIndex(k.first, k.second), c);
  return out;
}

// Fourier transform of poly(x) e^{-pi |x|^2}: q(xi) e^{-pi |xi|^2} with
// q = poly((i/2pi) d_xi) applied to the Gaussian.
Poly2 gaussian_fourier_poly(const Poly2& p) {
  // Represent F[x1^i x2^j G] by iterating F[x_j f] = (i/2pi) d_j F[f] on
  // (poly, Gaussian) pairs: d_j (r G) = (d_j r - 2 pi xi_j r) G.
  Poly2 q;  // accumulates the result polynomial
  q.c.resize(0, 0);
  auto d_poly = [](const Poly2& r, int axis) {
    if (r.zero()) return r;
    Poly2 out;
    const int n1 = static_cast<int>(r.c.rows()), n2 = static_cast<int>(r.c.cols());
    out.c = Eigen::MatrixXcd::Zero(std::max(1, n1 - (axis == 1)), std::max(1, n2 - (axis == 2)));
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n2; ++j) {
        if (axis == 1 && i >= 1) out.c(i - 1, j) += static_cast<double>(i) * r.c(i, j);
        if (axis == 2 && j >= 1) out.c(i, j - 1) += static_cast<double>(j) * r.c(i, j);
      }
    return out;
  };
  for (int i = 0; i <= p.deg1(); ++i)
    for (int j = 0; j <= p.deg2(); ++j) {
      if (p.c(i, j) == Complex(0.0)) continue;
      Poly2 r = Poly2::constant(1.0);
      for (int k = 0; k < i; ++k)
        r = Complex(0.0, 1.0 / kTwoPi) * (d_poly(r, 1) + Poly2::monomial(1, 0, -kTwoPi) * r);
      for (int k = 0; k < j; ++k)
        r = Complex(0.0, 1.0 / kTwoPi) * (d_poly(r, 2) + Poly2::monomial(0, 1, -kTwoPi) * r);
      q = q + p.c(i, j) * r;
    }
  return q;
}

Complex pow2pii(const Eigen::Vector2d& xi, const MultiIndex& d) {
  return std::pow(Complex(0.0, kTwoPi * xi[0]), d.m1) * std::pow(Complex(0.0, kTwoPi * xi[1]), d.m2);
}

// Fourier transform of the registry function at a regular point (valid where
// the companion profile vanishes near the singular set).
Complex registry_fourier(const FuncTerm& t, const Eigen::Vector2d& xi) {
  switch (t.kind) {
    case RegistryKind::Gaussian:
      return std::exp(-M_PI * xi.squaredNorm());
    case RegistryKind::PolyGaussian:
      return gaussian_fourier_poly(t.poly).eval(xi) * std::exp(-M_PI * xi.squaredNorm());
    case RegistryKind::AbsNorm: {
      const double r = xi.norm();
      if (r == 0.0) return 0.0;  // finite part; the companion vanishes here
      return -1.0 / (4.0 * M_PI * M_PI * r * r * r);
    }
    default:
      throw DegenerateInput("registry kind has no pointwise Fourier transform");
  }
}

// Moments of the generator: mu_k(psi) = (i/2pi)^{|k|} d^k psi_hat(0).
Complex generator_moment(const ShearletGenerator& gen, const MultiIndex& k) {
  const Complex d = gen.profile_jet({0.0, 0.0}, k.order()).derivative(k.m1, k.m2);
  return std::pow(Complex(0.0, 1.0 / kTwoPi), k.order()) * d;
}

}  // namespace

Complex Poly2::eval(const Eigen::Vector2d& x) const {
  if (zero()) return 0.0;
  Complex acc = 0.0;
  for (int i = deg1(); i >= 0; --i) {
    Complex row = 0.0;
    for (int j = deg2(); j >= 0; --j) row = row * x[1] + c(i, j);
    acc = acc * x[0] + row;
  }
  return acc;
}

Poly2 Poly2::monomial(int i, int j, Complex coeff) {
  Poly2 p;
  p.c = Eigen::MatrixXcd::Zero(i + 1, j + 1);
  p.c(i, j) = coeff;
  return p;
}

Poly2 operator+(const Poly2& a, const Poly2& b) {
  if (a.zero()) return b;
  if (b.zero()) return a;
  Poly2 r;
  r.c = Eigen::MatrixXcd::Zero(std::max(a.c.rows(), b.c.rows()), std::max(a.c.cols(), b.c.cols()));
  r.c.topLeftCorner(a.c.rows(), a.c.cols()) += a.c;
  r.c.topLeftCorner(b.c.rows(), b.c.cols()) += b.c;
  return r;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
  if (a.zero() || b.zero()) return {};
  Poly2 r;
  r.c = Eigen::MatrixXcd::Zero(a.c.rows() + b.c.rows() - 1, a.c.cols() + b.c.cols() - 1);
  for (int i = 0; i < a.c.rows(); ++i)
    for (int j = 0; j < a.c.cols(); ++j) {
      if (a.c(i, j) == Complex(0.0)) continue;
      for (int p = 0; p < b.c.rows(); ++p)
        for (int q = 0; q < b.c.cols(); ++q) r.c(i + p, j + q) += a.c(i, j) * b.c(p, q);
    }
  return r;
}

Poly2 operator*(Complex s, const Poly2& a) {
  Poly2 r = a;
  r.c *= s;
  return r;
}

Poly2 Poly2::substitute_affine(const Eigen::Matrix2d& M, const Eigen::Vector2d& t) const {
  if (zero()) return {};
  const Poly2 l1 = Poly2::monomial(1, 0, M(0, 0)) + Poly2::monomial(0, 1, M(0, 1)) +
                   Poly2::constant(t[0]);
  const Poly2 l2 = Poly2::monomial(1, 0, M(1, 0)) + Poly2::monomial(0, 1, M(1, 1)) +
                   Poly2::constant(t[1]);
  Poly2 acc;
  Poly2 p1 = Poly2::constant(1.0);
  for (int i = 0; i <= deg1(); ++i) {
    Poly2 p12 = p1;
    for (int j = 0; j <= deg2(); ++j) {
      if (c(i, j) != Complex(0.0)) acc = acc + c(i, j) * p12;
      p12 = p12 * l2;
    }
    p1 = p1 * l1;
  }
  return acc;
}

double registry_value(const FuncTerm& t, const Eigen::Vector2d& x) {
  switch (t.kind) {
    case RegistryKind::Gaussian:
      return std::exp(-M_PI * x.squaredNorm());
    case RegistryKind::Ramp:
      return std::max(x[0], 0.0);
    case RegistryKind::Sinusoid:
      return std::cos(kTwoPi * t.freq.dot(x) + t.phase);
    case RegistryKind::AbsNorm:
      return x.norm();
    case RegistryKind::PolyGaussian:
      return (t.poly.eval(x) * std::exp(-M_PI * x.squaredNorm())).real();
    case RegistryKind::Gridded:
      throw DegenerateInput("gridded terms have no closed-form values");
  }
  return 0.0;
}

Complex pair_with_test(const LizorkinDistribution& f, const SampledField2D& test) {
  Complex acc = 0.0;
  const double hb = test.grid.spacing[0] * test.grid.spacing[1];

  std::map<std::pair<int, int>, SampledField2D> derived;
  auto derived_field = [&](const MultiIndex& d) -> const SampledField2D& {
    auto it = derived.find({d.m1, d.m2});
    if (it == derived.end())
      it = derived.emplace(std::make_pair(d.m1, d.m2), spectral_derivative(test, d)).first;
    return it->second;
  };

  for (const DeltaAtom& atom : f.atoms) {
    const SampledField2D& df = derived_field(atom.deriv);
    const Complex v = TrigInterpolant::of_field(df).eval(atom.location);
    acc += atom.coeff * (atom.deriv.order() % 2 == 0 ? 1.0 : -1.0) * std::conj(v);
  }

  for (const FuncTerm& term : f.func_terms) {
    const SampledField2D& df = derived_field(term.deriv);
    Complex sum = 0.0;
    if (term.kind == RegistryKind::Gridded) {
      if (!term.payload.grid.same_as(test.grid))
        throw GridMismatch("gridded term and test live on different grids");
      sum = (term.payload.values * df.values.conjugate()).sum();
    } else {
      for (Eigen::Index j2 = 0; j2 < test.grid.n2; ++j2)
        for (Eigen::Index j1 = 0; j1 < test.grid.n1; ++j1)
          sum += registry_value(term, test.grid.point(j1, j2)) * std::conj(df.values(j1, j2));
    }
    acc += (term.deriv.order() % 2 == 0 ? 1.0 : -1.0) * hb * sum;
  }

  if (!f.poly.zero()) {
    Complex sum = 0.0;
    for (Eigen::Index j2 = 0; j2 < test.grid.n2; ++j2)
      for (Eigen::Index j1 = 0; j1 < test.grid.n1; ++j1)
        sum += f.poly.eval(test.grid.point(j1, j2)) * std::conj(test.values(j1, j2));
    acc += hb * sum;
  }
  return acc;
}

namespace {

// Common factor of the frequency-route pairings:
// K(xi) = f_hat-part(xi) * |a|^{3/4} e^{2 pi i b.xi} conj(psi_hat(W xi)).
struct WarpKernel {
  const ShearletGenerator* gen;
  double s, a, amp;
  Eigen::Vector2d b;

  explicit WarpKernel(const ShearletGenerator& g, const GroupElement& el)
      : gen(&g), s(el.s), a(el.a), amp(std::pow(std::abs(el.a), 0.75)), b(el.b) {}

  Complex at(const Eigen::Vector2d& xi, const MultiIndex& deriv) const {
    const Complex m = gen->profile(warp_freq(s, a, xi));
    if (m == Complex(0.0)) return 0.0;
    return pow2pii(xi, deriv) * amp * std::polar(1.0, kTwoPi * b.dot(xi)) * std::conj(m);
  }
};

Complex func_term_against_rep(const FuncTerm& term, const ShearletGenerator& gen,
                              const GroupElement& g) {
  const WarpKernel K(gen, g);
  switch (term.kind) {
    case RegistryKind::Sinusoid: {
      const Complex up = 0.5 * std::polar(1.0, term.phase);
      return up * K.at(term.freq, term.deriv) +
             std::conj(up) * K.at(-term.freq, term.deriv);
    }
    case RegistryKind::Ramp: {
      if (term.deriv.m2 > 0) return 0.0;  // d_{x2} annihilates max(x1, 0) x 1
      const auto [lo, hi] = eta1_absolute_bounds(gen);
      if (lo <= 0.0) throw SingularDivision("ramp pairing needs a strip-supported profile");
      const double aa = std::abs(g.a);
      const std::vector<std::pair<double, double>> intervals{{-hi / aa, -lo / aa},
                                                             {lo / aa, hi / aa}};
      auto f = [&](double xi1) -> Complex {
        return -1.0 / (4.0 * M_PI * M_PI * xi1 * xi1) * K.at({xi1, 0.0}, term.deriv);
      };
      const double density = std::max(2.0, 0.5 * std::abs(g.b[0]));
      return detail::integrate_intervals(intervals, f, 1e-8, density);
    }
    case RegistryKind::Gaussian:
    case RegistryKind::PolyGaussian:
    case RegistryKind::AbsNorm: {
      // Substitute eta = W xi: integrate over the generator support.
      const double aa = std::abs(g.a);
      const Eigen::Matrix2d W = dilation_matrix(g.a) * shear_matrix(g.s).transpose();
      const Eigen::Matrix2d Winv = W.inverse();
      auto f = [&](const Eigen::Vector2d& eta) -> Complex {
        const Eigen::Vector2d xi = Winv * eta;
        const Complex m = gen.profile(eta);
        if (m == Complex(0.0)) return 0.0;
        return registry_fourier(term, xi) * pow2pii(xi, term.deriv) * K.amp *
               std::polar(1.0, kTwoPi * K.b.dot(xi)) * std::conj(m) / (aa * std::sqrt(aa));
      };
      std::vector<detail::Box2> boxes;
      for (const FreqRect& r : gen.freq_support()) boxes.emplace_back(r.lo, r.hi);
      const double osc = (Winv.transpose() * g.b).cwiseAbs().maxCoeff();
      return detail::integrate_boxes(boxes, f, 1e-8, std::max(2.0, 0.5 * osc));
    }
    case RegistryKind::Gridded: {
      // h^2 sum payload(x) conj(d^deriv pi_g psi)(x) over the payload grid.
      const Grid2D& grid = term.payload.grid;
      const Eigen::Matrix2d M = dilation_matrix(g.a).inverse() * shear_matrix(-g.s);
      const Eigen::Vector2d base = M * (Eigen::Vector2d{grid.x1(0), grid.x2(0)} - g.b);
      const Eigen::Vector2d e1 = grid.spacing[0] * M.col(0);
      const Eigen::Vector2d e2 = grid.spacing[1] * M.col(1);
      CArray rep = CArray::Zero(grid.n1, grid.n2);
      for (const auto& [k, c] : chain_rule_terms(M, term.deriv))
        rep += c * eval_space_lattice(gen, base, e1, e2, grid.n1, grid.n2, k);
      rep *= std::pow(std::abs(g.a), -0.75);
      const double hb = grid.spacing[0] * grid.spacing[1];
      const double sgn = term.deriv.order() % 2 == 0 ? 1.0 : -1.0;
      return sgn * hb * (term.payload.values * rep.conjugate()).sum();
    }
  }
  return 0.0;
}

}  // namespace

Complex pair_with_test(const LizorkinDistribution& f, const ShearletGenerator& gen,
                       const GroupElement& g) {
  Complex acc = 0.0;
  const double amp = std::pow(std::abs(g.a), -0.75);
  const Eigen::Matrix2d M = dilation_matrix(g.a).inverse() * shear_matrix(-g.s);

  for (const DeltaAtom& atom : f.atoms) {
    Complex v = 0.0;
    const Eigen::Vector2d y = M * (atom.location - g.b);
    for (const auto& [k, c] : chain_rule_terms(M, atom.deriv)) v += c * eval_space(gen, y, k);
    acc += atom.coeff * (atom.deriv.order() % 2 == 0 ? 1.0 : -1.0) * std::conj(amp * v);
  }

  for (const FuncTerm& term : f.func_terms) acc += func_term_against_rep(term, gen, g);

  if (!f.poly.zero()) {
    // <p, pi psi> = |a|^{3/4} sum_k c'_k conj(mu_k(psi)) with p(b + N A y)
    // expanded in y; exactly 0 for strip-supported generators.
    const Eigen::Matrix2d NA = shear_matrix(g.s) * dilation_matrix(g.a);
    const Poly2 sub = f.poly.substitute_affine(NA, g.b);
    Complex sum = 0.0;
    for (int i = 0; i <= sub.deg1(); ++i)
      for (int j = 0; j <= sub.deg2(); ++j) {
        if (sub.c(i, j) == Complex(0.0)) continue;
        sum += sub.c(i, j) * std::conj(generator_moment(gen, MultiIndex(i, j)));
      }
    acc += std::pow(std::abs(g.a), 0.75) * sum;
  }
  return acc;
}

std::vector<Complex> transform_distribution(const LizorkinDistribution& f,
                                            const ShearletGenerator& gen,
                                            const std::vector<GroupElement>& params) {
  std::vector<Complex> out;
  out.reserve(params.size());
  for (const GroupElement& g : params) out.push_back(pair_with_test(f, gen, g));
  return out;
}

namespace {

// Per-slice evaluator of the distributional transform over a parameter grid;
// shared by the volume builder and the streamed desingularized pairing.
class DistributionSlicer {
 public:
  DistributionSlicer(const LizorkinDistribution& f, const ShearletGenerator& gen,
                     const ParamGrid& pgrid)
      : f_(f), gen_(gen), pgrid_(pgrid), freq_(pgrid.b_grid.dual()) {
    if (!f.poly.zero() && !gen.lizorkin())
      throw DegenerateInput("polynomial parts need a strip-supported generator");
    for (const FuncTerm& term : f.func_terms)
      if (term.kind == RegistryKind::Ramp && term.deriv.m2 == 0 && !gen.lizorkin())
        throw SingularDivision("ramp terms need a strip-supported profile");
    for (const FuncTerm& term : f.func_terms)
      if (term.kind == RegistryKind::Gridded) {
        if (!term.payload.grid.same_as(pgrid.b_grid))
          throw GridMismatch("gridded term must live on the b-grid");
        FrequencyField2D ph = fft_forward(term.payload);
        if (!have_gridded_) gridded_hat_ = FrequencyField2D::zero(freq_);
        gridded_hat_.values += derivative_in_frequency(ph, term.deriv).values;
        have_gridded_ = true;
      }
  }

  CArray slice(Eigen::Index is, Eigen::Index ia) const {
    const double a = pgrid_.a_values[ia];
    const double s = pgrid_.s_values[is];
    const double amp = std::pow(std::abs(a), 0.75);

    // Spectrum-borne parts: atoms + smooth-registry terms + gridded terms.
    FrequencyField2D slice_hat = FrequencyField2D::zero(freq_);
    for (Eigen::Index k2 = 0; k2 < freq_.n2; ++k2)
      for (Eigen::Index k1 = 0; k1 < freq_.n1; ++k1) {
        const Eigen::Vector2d xi{freq_.x1(k1), freq_.x2(k2)};
        const Complex m = gen_.profile(warp_freq(s, a, xi));
        if (m == Complex(0.0)) continue;
        Complex fh = 0.0;
        for (const DeltaAtom& atom : f_.atoms)
          fh += atom.coeff * pow2pii(xi, atom.deriv) *
                std::polar(1.0, -kTwoPi * xi.dot(atom.location));
        for (const FuncTerm& term : f_.func_terms) {
          if (term.kind == RegistryKind::Sinusoid || term.kind == RegistryKind::Ramp ||
              term.kind == RegistryKind::Gridded)
            continue;
          fh += registry_fourier(term, xi) * pow2pii(xi, term.deriv);
        }
        if (have_gridded_) fh += gridded_hat_.values(k1, k2);
        slice_hat.values(k1, k2) = fh * std::conj(m) * amp;
      }
    CArray out = fft_inverse(slice_hat, pgrid_.b_grid).values;

    // Line- and point-supported spectra contribute closed forms over b.
    const GroupElement g_sa{Eigen::Vector2d{0.0, 0.0}, s, a};
    for (const FuncTerm& term : f_.func_terms) {
      if (term.kind == RegistryKind::Sinusoid) {
        const WarpKernel K0(gen_, g_sa);
        const Complex up = 0.5 * std::polar(1.0, term.phase);
        const Complex k_plus = K0.at(term.freq, term.deriv);
        const Complex k_minus = K0.at(-term.freq, term.deriv);
        if (k_plus == Complex(0.0) && k_minus == Complex(0.0)) continue;
        for (Eigen::Index j2 = 0; j2 < pgrid_.b_grid.n2; ++j2)
          for (Eigen::Index j1 = 0; j1 < pgrid_.b_grid.n1; ++j1) {
            const Eigen::Vector2d b = pgrid_.b_grid.point(j1, j2);
            out(j1, j2) += up * k_plus * std::polar(1.0, kTwoPi * b.dot(term.freq)) +
                           std::conj(up) * k_minus * std::polar(1.0, -kTwoPi * b.dot(term.freq));
          }
      } else if (term.kind == RegistryKind::Ramp && term.deriv.m2 == 0) {
        const auto [lo, hi] = eta1_absolute_bounds(gen_);
        const double aa = std::abs(a);
        const std::vector<std::pair<double, double>> intervals{{-hi / aa, -lo / aa},
                                                               {lo / aa, hi / aa}};
        for (Eigen::Index j1 = 0; j1 < pgrid_.b_grid.n1; ++j1) {
          const double b1 = pgrid_.b_grid.x1(j1);
          auto fi = [&](double xi1) -> Complex {
            const Complex m = gen_.profile(warp_freq(s, a, {xi1, 0.0}));
            if (m == Complex(0.0)) return 0.0;
            return -1.0 / (4.0 * M_PI * M_PI * xi1 * xi1) * pow2pii({xi1, 0.0}, term.deriv) *
                   amp * std::polar(1.0, kTwoPi * b1 * xi1) * std::conj(m);
          };
          const Complex v =
              detail::integrate_intervals(intervals, fi, 1e-8, std::max(2.0, 0.5 * std::abs(b1)));
          for (Eigen::Index j2 = 0; j2 < pgrid_.b_grid.n2; ++j2) out(j1, j2) += v;
        }
      }
    }
    return out;
  }

 private:
  const LizorkinDistribution& f_;
  const ShearletGenerator& gen_;
  const ParamGrid& pgrid_;
  Grid2D freq_;
  FrequencyField2D gridded_hat_;
  bool have_gridded_ = false;
};

}  // namespace

CoefficientVolume transform_distribution_volume(const LizorkinDistribution& f,
                                                const ShearletGenerator& gen,
                                                const ParamGrid& pgrid) {
  const DistributionSlicer slicer(f, gen, pgrid);
  CoefficientVolume vol = CoefficientVolume::zero(pgrid);
  for (Eigen::Index ia = 0; ia < pgrid.na(); ++ia)
    for (Eigen::Index is = 0; is < pgrid.ns(); ++is) vol.slice(is, ia) = slicer.slice(is, ia);
  return vol;
}

Complex synthesize_distribution(const CoefficientVolume& Psi, const ShearletGenerator& gen,
                                const SampledField2D& test) {
  if (!is_lizorkin_surrogate(test, 1e-6))
    throw NotLizorkin("test field fails the vanishing-moment surrogate");
  const CoefficientVolume st = transform_spectral(test, gen, Psi.pgrid);
  return haar_inner(Psi, st);
}

Complex desingularized_pairing(const LizorkinDistribution& f, const ShearletGenerator& gen_psi,
                               const ShearletGenerator& gen_phi, const SampledField2D& test,
                               const ParamGrid& pgrid) {
  if (!pgrid.b_grid.same_as(test.grid)) throw GridMismatch("b-grid must equal the test grid");
  const AdmissibilityReport adm = admissibility(gen_psi, gen_phi, default_probes(gen_psi));
  require_admissible(adm);
  const FrequencyField2D that = fft_forward(test);
  CoverageReport cov = coverage_of(that, gen_phi, pgrid);
  if (cov.gap) throw CoverageGap("test field is not band-covered by the parameter grid");

  // Streamed over slices: int S_psi f conj(S_phi test) dmu.
  const DistributionSlicer slicer(f, gen_psi, pgrid);
  const double hb = pgrid.b_grid.spacing[0] * pgrid.b_grid.spacing[1];
  FrequencyField2D t_slice_hat = FrequencyField2D::zero(that.grid);
  Complex acc = 0.0, comp = 0.0;
  for (Eigen::Index ia = 0; ia < pgrid.na(); ++ia) {
    const double a = pgrid.a_values[ia];
    const double amp = std::pow(std::abs(a), 0.75);
    for (Eigen::Index is = 0; is < pgrid.ns(); ++is) {
      const double s = pgrid.s_values[is];
      for (Eigen::Index k2 = 0; k2 < that.grid.n2; ++k2)
        for (Eigen::Index k1 = 0; k1 < that.grid.n1; ++k1) {
          const Complex m =
              gen_phi.profile(warp_freq(s, a, {that.grid.x1(k1), that.grid.x2(k2)}));
          t_slice_hat.values(k1, k2) = that.values(k1, k2) * std::conj(m) * amp;
        }
      const CArray t_slice = fft_inverse(t_slice_hat, pgrid.b_grid).values;
      const CArray f_slice = slicer.slice(is, ia);
      const Complex term =
          (f_slice * t_slice.conjugate()).sum() * (pgrid.haar_weight(is, ia) * hb);
      const Complex y = term - comp;
      const Complex t = acc + y;
      comp = (t - acc) - y;
      acc = t;
    }
  }
  return acc / adm.c_psi;
}

LizorkinDistribution make_registry_distribution(RegistryKind kind) {
  LizorkinDistribution d;
  FuncTerm t;
  t.kind = kind;
  switch (kind) {
    case RegistryKind::Gaussian:
      break;
    case RegistryKind::Ramp:
      break;
    case RegistryKind::Sinusoid:
      t.freq = {0.8, 0.15};
      t.phase = 0.4;
      break;
    case RegistryKind::AbsNorm:
      break;
    case RegistryKind::PolyGaussian:
      t.poly = Poly2::constant(1.0) + Poly2::monomial(1, 0, 0.75) + Poly2::monomial(0, 2, -0.5);
      t.deriv = MultiIndex(1, 0);
      break;
    case RegistryKind::Gridded:
      throw DegenerateInput("gridded entries need an explicit payload");
  }
  d.func_terms.push_back(std::move(t));
  return d;
}

const std::vector<RegistryKind>& analytic_registry() {
  static const std::vector<RegistryKind> kinds{RegistryKind::Gaussian, RegistryKind::Ramp,
                                               RegistryKind::Sinusoid, RegistryKind::AbsNorm,
                                               RegistryKind::PolyGaussian};
  return kinds;
}

}  // namespace shearkit
