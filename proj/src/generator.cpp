#include "shearkit/generator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "shearkit/detail/quadrature.hpp"

namespace shearkit {

using detail::Jet2;
using detail::TaylorSeries;

namespace detail {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Profile {
  virtual ~Profile() = default;
  virtual Complex value(const Eigen::Vector2d& xi) const = 0;
  virtual Jet2 jet(const Eigen::Vector2d& xi, int order) const = 0;
  virtual std::vector<FreqRect> support() const = 0;
  virtual double strip_radius() const = 0;
};

namespace {

bool rects_overlap(const FreqRect& a, const FreqRect& b) {
  return a.lo[0] < b.hi[0] && b.lo[0] < a.hi[0] && a.lo[1] < b.hi[1] && b.lo[1] < a.hi[1];
}

// Disjoint cover of the union: overlapping rectangles collapse into their
// bounding box, so quadrature never double-counts.
std::vector<FreqRect> merge_rects(std::vector<FreqRect> rects) {
  bool merged = true;
  while (merged) {
    merged = false;
    for (size_t i = 0; i < rects.size() && !merged; ++i)
      for (size_t j = i + 1; j < rects.size() && !merged; ++j)
        if (rects_overlap(rects[i], rects[j])) {
          rects[i].lo = rects[i].lo.cwiseMin(rects[j].lo);
          rects[i].hi = rects[i].hi.cwiseMax(rects[j].hi);
          rects.erase(rects.begin() + static_cast<std::ptrdiff_t>(j));
          merged = true;
        }
  }
  return rects;
}

struct MeyerConeProfile final : Profile {
  double r0in, r1in, r1out, r0out;
  double q0, cw, pw;
  ConeSide side;

  double wband(double u) const {
    return smoothstep((u - r0in) / (r1in - r0in)) * smoothstep((r0out - u) / (r0out - r1out));
  }
  double vcone(double q) const {
    return smoothstep((cw - std::abs(q - q0)) / (cw - pw));
  }

  bool side_ok(double xi1) const {
    if (side == ConeSide::Positive) return xi1 > 0.0;
    if (side == ConeSide::Negative) return xi1 < 0.0;
    return true;
  }

  Complex value(const Eigen::Vector2d& xi) const override {
    const double u = std::abs(xi[0]);
    if (u <= r0in || u >= r0out || !side_ok(xi[0])) return 0.0;
    return wband(u) * vcone(xi[1] / xi[0]);
  }

  Jet2 jet(const Eigen::Vector2d& xi, int order) const override {
    const double u = std::abs(xi[0]);
    if (u <= r0in || u >= r0out || !side_ok(xi[0])) return Jet2(order);
    const double q = xi[1] / xi[0];
    if (std::abs(q - q0) >= cw) return Jet2(order);

    const double sgn1 = xi[0] > 0.0 ? 1.0 : -1.0;
    const Jet2 j1 = Jet2::variable1(xi[0], order);
    const Jet2 j2 = Jet2::variable2(xi[1], order);
    const Jet2 ju = Complex(sgn1) * j1;  // |xi1| on the current branch

    auto step_of_affine = [&](const Jet2& arg, double alpha, double beta) {
      // smoothstep(alpha * arg + beta)
      Jet2 t = Complex(alpha) * arg;
      t.c(0, 0) += beta;
      const TaylorSeries outer = smoothstep_series(t.c(0, 0).real(), order);
      return compose(outer, t);
    };
    const Jet2 wjet = step_of_affine(ju, 1.0 / (r1in - r0in), -r0in / (r1in - r0in)) *
                      step_of_affine(Complex(-1.0) * ju, 1.0 / (r0out - r1out),
                                     r0out / (r0out - r1out));

    // v(xi2/xi1) through |q - q0|; the sign is fixed on the branch and the
    // plateau makes the kink at q = q0 irrelevant (flat outer step there).
    const Jet2 qjet = j2 * reciprocal(j1);
    const double sq = q >= q0 ? 1.0 : -1.0;
    Jet2 dq = Complex(sq) * qjet;
    dq.c(0, 0) -= sq * q0;
    const Jet2 vjet = step_of_affine(Complex(-1.0) * dq, 1.0 / (cw - pw), cw / (cw - pw));
    return wjet * vjet;
  }

  std::vector<FreqRect> support() const override {
    std::vector<FreqRect> rects;
    const double qlo = q0 - cw, qhi = q0 + cw;
    auto branch = [&](double a, double b) {  // xi1 in [a, b]
      double lo2 = std::numeric_limits<double>::max(), hi2 = std::numeric_limits<double>::lowest();
      for (double qq : {qlo, qhi})
        for (double x1 : {a, b}) {
          lo2 = std::min(lo2, qq * x1);
          hi2 = std::max(hi2, qq * x1);
        }
      rects.push_back({{a, lo2}, {b, hi2}});
    };
    if (side != ConeSide::Negative) branch(r0in, r0out);
    if (side != ConeSide::Positive) branch(-r0out, -r0in);
    return rects;
  }

  double strip_radius() const override { return r0in; }
};

struct GaussianProfile final : Profile {
  Complex value(const Eigen::Vector2d& xi) const override {
    return std::exp(-M_PI * xi.squaredNorm());
  }
  Jet2 jet(const Eigen::Vector2d& xi, int order) const override {
    const Jet2 j1 = Jet2::variable1(xi[0], order);
    const Jet2 j2 = Jet2::variable2(xi[1], order);
    return exp_jet(-M_PI * (j1 * j1 + j2 * j2));
  }
  std::vector<FreqRect> support() const override {
    return {{{-5.0, -5.0}, {5.0, 5.0}}};
  }
  double strip_radius() const override { return 0.0; }
};

struct ConjugateProfile final : Profile {
  std::shared_ptr<const Profile> inner;

  Complex value(const Eigen::Vector2d& xi) const override {
    return std::conj(inner->value(-xi));
  }
  Jet2 jet(const Eigen::Vector2d& xi, int order) const override {
    Jet2 j = inner->jet(-xi, order);
    for (int i = 0; i <= order; ++i)
      for (int k = 0; i + k <= order; ++k)
        j.c(i, k) = ((i + k) % 2 == 0 ? 1.0 : -1.0) * std::conj(j.c(i, k));
    return j;
  }
  std::vector<FreqRect> support() const override {
    std::vector<FreqRect> out;
    for (const FreqRect& r : inner->support())
      out.push_back({{-r.hi[0], -r.hi[1]}, {-r.lo[0], -r.lo[1]}});
    return out;
  }
  double strip_radius() const override { return inner->strip_radius(); }
};

struct ComboProfile final : Profile {
  std::vector<std::pair<Complex, std::shared_ptr<const Profile>>> terms;

  Complex value(const Eigen::Vector2d& xi) const override {
    Complex acc = 0.0;
    for (const auto& [c, p] : terms) acc += c * p->value(xi);
    return acc;
  }
  Jet2 jet(const Eigen::Vector2d& xi, int order) const override {
    Jet2 acc(order);
    for (const auto& [c, p] : terms) acc = acc + c * p->jet(xi, order);
    return acc;
  }
  std::vector<FreqRect> support() const override {
    std::vector<FreqRect> out;
    for (const auto& [c, p] : terms)
      for (const FreqRect& r : p->support()) out.push_back(r);
    return out;
  }
  double strip_radius() const override {
    double r = std::numeric_limits<double>::max();
    for (const auto& [c, p] : terms) r = std::min(r, p->strip_radius());
    return r;
  }
};

Complex monomial_2pii(const Eigen::Vector2d& xi, const MultiIndex& m) {
  return std::pow(Complex(0.0, kTwoPi * xi[0]), m.m1) * std::pow(Complex(0.0, kTwoPi * xi[1]), m.m2);
}

}  // namespace
}  // namespace detail

ShearletGenerator::ShearletGenerator(std::shared_ptr<const detail::Profile> impl, std::string kind,
                                     std::map<std::string, double> params)
    : impl_(std::move(impl)),
      support_(detail::merge_rects(impl_->support())),
      strip_radius_(impl_->strip_radius()),
      kind_(std::move(kind)),
      params_(std::move(params)) {}

Complex ShearletGenerator::profile(const Eigen::Vector2d& xi) const { return impl_->value(xi); }

Jet2 ShearletGenerator::profile_jet(const Eigen::Vector2d& xi, int order) const {
  if (order > kMaxOrder) throw OrderTooHigh("jet order exceeds max order");
  return impl_->jet(xi, order);
}

ShearletGenerator make_meyer_shearlet(const std::array<double, 4>& band, double cone_halfwidth) {
  return make_cone_generator(band, 0.0, cone_halfwidth, 0.5 * cone_halfwidth, ConeSide::Both);
}

ShearletGenerator make_cone_generator(const std::array<double, 4>& band, double cone_center,
                                      double cone_halfwidth, double plateau, ConeSide side) {
  if (!(0.0 < band[0] && band[0] < band[1] && band[1] < band[2] && band[2] < band[3]))
    throw BadBandEdges("need 0 < r0_in < r1_in < r1_out < r0_out");
  if (!(cone_halfwidth > 0.0) || cone_halfwidth > 2.0)
    throw BadBandEdges("cone half-width must lie in (0, 2]");
  if (!(plateau > 0.0) || plateau >= cone_halfwidth)
    throw BadBandEdges("cone plateau must lie in (0, halfwidth)");
  auto p = std::make_shared<detail::MeyerConeProfile>();
  p->r0in = band[0];
  p->r1in = band[1];
  p->r1out = band[2];
  p->r0out = band[3];
  p->q0 = cone_center;
  p->cw = cone_halfwidth;
  p->pw = plateau;
  p->side = side;
  std::map<std::string, double> params{
      {"r0_in", band[0]},        {"r1_in", band[1]},
      {"r1_out", band[2]},       {"r0_out", band[3]},
      {"cone_center", cone_center}, {"cone_halfwidth", cone_halfwidth},
      {"cone_plateau", plateau},
      {"side", side == ConeSide::Both ? 0.0 : (side == ConeSide::Positive ? 1.0 : -1.0)}};
  return ShearletGenerator(p, "meyer_cone", std::move(params));
}

ShearletGenerator make_gaussian_profile() {
  return ShearletGenerator(std::make_shared<detail::GaussianProfile>(), "gaussian", {});
}

ShearletGenerator conjugate(const ShearletGenerator& g) {
  auto p = std::make_shared<detail::ConjugateProfile>();
  p->inner = g.impl();
  return ShearletGenerator(p, "conjugate(" + g.kind() + ")", g.params());
}

ShearletGenerator linear_combination(
    const std::vector<std::pair<Complex, ShearletGenerator>>& terms) {
  auto p = std::make_shared<detail::ComboProfile>();
  for (const auto& [c, g] : terms) p->terms.emplace_back(c, g.impl());
  return ShearletGenerator(p, "combo", {});
}

Complex eval_profile(const ShearletGenerator& gen, const Eigen::Vector2d& xi,
                     const MultiIndex& deriv) {
  if (deriv.order() == 0) return gen.profile(xi);
  return gen.profile_jet(xi, deriv.order()).derivative(deriv.m1, deriv.m2);
}

namespace {

using detail::Rule2D;

struct WeightedNodes {
  Eigen::Matrix2Xd points;
  Eigen::VectorXcd coeffs;  // profile * (2 pi i xi)^deriv * quadrature weight
};

WeightedNodes support_nodes(const ShearletGenerator& gen, const MultiIndex& deriv,
                            double density) {
  std::vector<Eigen::Vector2d> pts;
  std::vector<Complex> cs;
  for (const FreqRect& r : gen.freq_support()) {
    const int p1 = std::max<int>(1, static_cast<int>(std::ceil((r.hi[0] - r.lo[0]) * density)));
    const int p2 = std::max<int>(1, static_cast<int>(std::ceil((r.hi[1] - r.lo[1]) * density)));
    const Rule2D rule = detail::tensor_rule(r.lo, r.hi, p1, p2, 12);
    for (Eigen::Index q = 0; q < rule.weights.size(); ++q) {
      const Eigen::Vector2d xi = rule.points.col(q);
      const Complex v = gen.profile(xi);
      if (v == Complex(0.0)) continue;
      pts.push_back(xi);
      cs.push_back(v * detail::monomial_2pii(xi, deriv) * rule.weights[q]);
    }
  }
  WeightedNodes out;
  out.points.resize(2, static_cast<Eigen::Index>(pts.size()));
  out.coeffs.resize(static_cast<Eigen::Index>(pts.size()));
  for (size_t i = 0; i < pts.size(); ++i) {
    out.points.col(static_cast<Eigen::Index>(i)) = pts[i];
    out.coeffs[static_cast<Eigen::Index>(i)] = cs[i];
  }
  return out;
}

Eigen::ArrayXcd phase_sum_points(const WeightedNodes& nodes, const Eigen::Matrix2Xd& points) {
  Eigen::ArrayXcd acc = Eigen::ArrayXcd::Zero(points.cols());
  for (Eigen::Index q = 0; q < nodes.coeffs.size(); ++q) {
    const Eigen::Vector2d xi = nodes.points.col(q);
    const Complex c = nodes.coeffs[q];
    for (Eigen::Index i = 0; i < points.cols(); ++i)
      acc[i] += c * std::polar(1.0, detail::kTwoPi * xi.dot(points.col(i)));
  }
  return acc;
}

CArray phase_sum_lattice(const WeightedNodes& nodes, const Eigen::Vector2d& base,
                         const Eigen::Vector2d& e1, const Eigen::Vector2d& e2, Eigen::Index m1,
                         Eigen::Index m2) {
  const Eigen::Index total = nodes.coeffs.size();
  const Eigen::Index chunk = std::min<Eigen::Index>(4096, std::max<Eigen::Index>(total, 1));
  Eigen::MatrixXcd result = Eigen::MatrixXcd::Zero(m1, m2);
  Eigen::MatrixXcd A(m1, chunk), B(chunk, m2);
  for (Eigen::Index q0 = 0; q0 < total; q0 += chunk) {
    const Eigen::Index nb = std::min(chunk, total - q0);
    for (Eigen::Index q = 0; q < nb; ++q) {
      const Eigen::Vector2d xi = nodes.points.col(q0 + q);
      const Complex c0 = nodes.coeffs[q0 + q] * std::polar(1.0, detail::kTwoPi * xi.dot(base));
      const Complex w1 = std::polar(1.0, detail::kTwoPi * xi.dot(e1));
      const Complex w2 = std::polar(1.0, detail::kTwoPi * xi.dot(e2));
      Complex acc = c0;
      for (Eigen::Index i = 0; i < m1; ++i) {
        A(i, q) = acc;
        acc *= w1;
      }
      acc = 1.0;
      for (Eigen::Index i = 0; i < m2; ++i) {
        B(q, i) = acc;
        acc *= w2;
      }
    }
    result.noalias() += A.leftCols(nb) * B.topRows(nb);
  }
  return result.array();
}

double lattice_reach(const Eigen::Vector2d& base, const Eigen::Vector2d& e1,
                     const Eigen::Vector2d& e2, Eigen::Index m1, Eigen::Index m2) {
  double r = 0.0;
  for (double i1 : {0.0, static_cast<double>(m1 - 1)})
    for (double i2 : {0.0, static_cast<double>(m2 - 1)})
      r = std::max(r, (base + i1 * e1 + i2 * e2).cwiseAbs().maxCoeff());
  return r;
}

}  // namespace

Eigen::ArrayXcd eval_space_batch(const ShearletGenerator& gen, const Eigen::Matrix2Xd& points,
                                 const MultiIndex& deriv, double tol) {
  if (points.cols() == 0) return {};
  double reach = 0.0;
  for (Eigen::Index i = 0; i < points.cols(); ++i)
    reach = std::max(reach, points.col(i).cwiseAbs().maxCoeff());
  double density = std::max(1.0, 0.5 * reach);  // ~2 GL panels per oscillation cycle
  Eigen::ArrayXcd prev = phase_sum_points(support_nodes(gen, deriv, density), points);
  for (int level = 0; level < 6; ++level) {
    density *= 2.0;
    Eigen::ArrayXcd next = phase_sum_points(support_nodes(gen, deriv, density), points);
    const double diff = (next - prev).abs().maxCoeff();
    const double scale = std::max(1.0, next.abs().maxCoeff());
    prev.swap(next);
    if (diff <= tol * scale) return prev;
  }
  throw QuadratureNotConverged("eval_space refinement did not settle");
}

Complex eval_space(const ShearletGenerator& gen, const Eigen::Vector2d& x,
                   const MultiIndex& deriv, double tol) {
  Eigen::Matrix2Xd pts(2, 1);
  pts.col(0) = x;
  return eval_space_batch(gen, pts, deriv, tol)[0];
}

CArray eval_space_lattice(const ShearletGenerator& gen, const Eigen::Vector2d& base,
                          const Eigen::Vector2d& e1, const Eigen::Vector2d& e2, Eigen::Index m1,
                          Eigen::Index m2, const MultiIndex& deriv, double tol) {
  double density = std::max(1.0, 0.5 * lattice_reach(base, e1, e2, m1, m2));
  CArray prev = phase_sum_lattice(support_nodes(gen, deriv, density), base, e1, e2, m1, m2);
  for (int level = 0; level < 6; ++level) {
    density *= 2.0;
    CArray next = phase_sum_lattice(support_nodes(gen, deriv, density), base, e1, e2, m1, m2);
    const double diff = (next - prev).abs().maxCoeff();
    const double scale = std::max(1.0, next.abs().maxCoeff());
    prev.swap(next);
    if (diff <= tol * scale) return prev;
  }
  throw QuadratureNotConverged("eval_space_lattice refinement did not settle");
}

namespace {

Complex integrate_rects(const std::vector<FreqRect>& rects,
                        const std::function<Complex(const Eigen::Vector2d&)>& f, double rel_tol,
                        double density0 = 2.0) {
  std::vector<detail::Box2> boxes;
  for (const FreqRect& r : rects) boxes.emplace_back(r.lo, r.hi);
  return detail::integrate_boxes(boxes, f, rel_tol, density0);
}

std::vector<FreqRect> intersect_supports(const std::vector<FreqRect>& a,
                                         const std::vector<FreqRect>& b) {
  std::vector<FreqRect> out;
  for (const FreqRect& ra : a)
    for (const FreqRect& rb : b) {
      FreqRect r{ra.lo.cwiseMax(rb.lo), ra.hi.cwiseMin(rb.hi)};
      if (r.hi[0] > r.lo[0] && r.hi[1] > r.lo[1]) out.push_back(r);
    }
  return out;
}

}  // namespace

std::pair<double, double> eta1_absolute_bounds(const ShearletGenerator& gen) {
  double lo = std::numeric_limits<double>::max(), hi = 0.0;
  for (const FreqRect& r : gen.freq_support()) {
    const bool straddles = r.lo[0] < 0.0 && r.hi[0] > 0.0;
    lo = std::min(lo, straddles ? 0.0 : std::min(std::abs(r.lo[0]), std::abs(r.hi[0])));
    hi = std::max(hi, std::max(std::abs(r.lo[0]), std::abs(r.hi[0])));
  }
  if (gen.freq_support().empty()) lo = 0.0;
  return {lo, hi};
}

AdmissibilityReport admissibility(const ShearletGenerator& psi, const ShearletGenerator& phi,
                                  const std::vector<Eigen::Vector2d>& probe_xis) {
  AdmissibilityReport rep;
  const std::vector<FreqRect> joint = intersect_supports(psi.freq_support(), phi.freq_support());

  auto integrand = [&](const Eigen::Vector2d& xi) -> Complex {
    if (xi[0] == 0.0) return 0.0;
    return std::conj(psi.profile(xi)) * phi.profile(xi) / (xi[0] * xi[0]);
  };
  auto abs_integrand = [&](const Eigen::Vector2d& xi) -> Complex {
    if (xi[0] == 0.0) return 0.0;
    return std::abs(psi.profile(xi)) * std::abs(phi.profile(xi)) / (xi[0] * xi[0]);
  };

  // Dyadic-shell divergence surrogate for "< +infty": the |xi1|-shell masses
  // must decay toward 0.
  Eigen::ArrayXd shell(21);
  shell.setZero();
  double xi2_lo = 0.0, xi2_hi = 0.0;
  for (const FreqRect& r : joint) {
    xi2_lo = std::min(xi2_lo, r.lo[1]);
    xi2_hi = std::max(xi2_hi, r.hi[1]);
  }
  for (int k = 1; k <= 20; ++k) {
    const double lo = std::pow(2.0, -k - 1), hi = std::pow(2.0, -k);
    const std::vector<FreqRect> shells{{{lo, xi2_lo}, {hi, xi2_hi}},
                                       {{-hi, xi2_lo}, {-lo, xi2_hi}}};
    const std::vector<FreqRect> cut = intersect_supports(shells, joint);
    if (cut.empty()) continue;
    shell[k] = std::abs(integrate_rects(cut, abs_integrand, 1e-4, 4.0));
  }
  rep.divergent = shell.maxCoeff() > 0.0 && shell[20] >= shell[15] && shell[20] > 0.0;
  if (rep.divergent) {
    rep.admissible = false;
    return rep;  // the full-plane integral has no value to report
  }

  rep.method_a = joint.empty() ? Complex(0.0) : integrate_rects(joint, integrand, 1e-7, 2.0);
  const double abs_mass =
      joint.empty() ? 0.0 : std::abs(integrate_rects(joint, abs_integrand, 1e-5, 2.0));
  rep.c_psi = rep.method_a;

  // (s,a)-form at each probe, truncated to |log2|a|| <= 8; the truncation is
  // exact for compact supports and monitored through the same tolerance.
  double eta1_min = std::numeric_limits<double>::max(), eta1_max = 0.0, eta2_max = 0.0;
  for (const ShearletGenerator* g : {&psi, &phi})
    for (const FreqRect& r : g->freq_support()) {
      const double alo = std::min(std::abs(r.lo[0]), std::abs(r.hi[0]));
      const double ahi = std::max(std::abs(r.lo[0]), std::abs(r.hi[0]));
      eta1_min = std::min(eta1_min, r.lo[0] < 0.0 && r.hi[0] > 0.0 ? 0.0 : alo);
      eta1_max = std::max(eta1_max, ahi);
      eta2_max = std::max(eta2_max, std::max(std::abs(r.lo[1]), std::abs(r.hi[1])));
    }

  rep.method_b.clear();
  for (const Eigen::Vector2d& xi : probe_xis) {
    if (xi[0] == 0.0) throw DegenerateInput("probe frequencies must avoid xi1 = 0");
    const double t_lo =
        std::max(-8.0, eta1_min > 0.0 ? std::log2(eta1_min / std::abs(xi[0])) : -8.0);
    const double t_hi = std::min(8.0, std::log2(std::max(eta1_max / std::abs(xi[0]), 1e-8)));
    Complex total = 0.0;
    if (t_hi > t_lo) {
      const double amax = std::pow(2.0, t_hi);
      const double s_c = xi[1] / xi[0];
      const double s_half = eta2_max * std::sqrt(amax) / std::abs(xi[0]) + 1.0;
      for (double sign : {1.0, -1.0}) {
        auto f = [&](const Eigen::Vector2d& ts) -> Complex {
          const double aa = std::pow(2.0, ts[0]);
          const double a = sign * aa;
          const double s = ts[1];
          const Eigen::Vector2d w{a * xi[0], a / std::sqrt(aa) * (xi[1] - s * xi[0])};
          return std::conj(psi.profile(w)) * phi.profile(w) * (std::log(2.0) / std::sqrt(aa));
        };
        const std::vector<FreqRect> box{{{t_lo, s_c - s_half}, {t_hi, s_c + s_half}}};
        total += integrate_rects(box, f, 1e-7, 1.0);
      }
    }
    rep.method_b.push_back(total);
  }

  double bmin = std::numeric_limits<double>::max(), bmax = 0.0;
  for (const Complex& b : rep.method_b) {
    rep.max_discrepancy = std::max(
        rep.max_discrepancy, std::abs(b - rep.method_a) / std::max(1e-30, std::abs(rep.method_a)));
    bmin = std::min(bmin, std::abs(b));
    bmax = std::max(bmax, std::abs(b));
  }
  rep.probe_spread = rep.method_b.empty()
                         ? 0.0
                         : (bmax - bmin) / std::max(1e-30, std::abs(rep.method_a));

  const double floor = 1e-8 * std::max(1.0, abs_mass + shell.sum());
  rep.admissible = !rep.divergent && std::abs(rep.c_psi) > floor &&
                   rep.max_discrepancy <= 1e-4 && rep.probe_spread <= 1e-4;
  return rep;
}

}  // namespace shearkit
