#include "shearkit/coeffspace.hpp"

#include <cmath>

#include "shearkit/detail/quadrature.hpp"
#include "shearkit/fft.hpp"

namespace shearkit {

namespace {

// Compensated (Kahan) accumulation keeps the reduction order-insensitive
// to well below 1e-13.
struct KahanSum {
  Complex sum{0.0, 0.0};
  Complex comp{0.0, 0.0};
  void add(Complex v) {
    const Complex y = v - comp;
    const Complex t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

double angle_weight(double x, int k) { return std::pow(1.0 + x * x, 0.5 * k); }

}  // namespace

ParamGrid ParamGrid::make(const Grid2D& b_grid, int octaves, int per_octave, double s_max,
                          double ds, bool both_branches) {
  if (octaves < 1 || per_octave < 1 || !(s_max > 0.0) || !(ds > 0.0))
    throw ConfigInvalid("parameter grid needs octaves >= 1, per_octave >= 1, s_max > 0, ds > 0");
  ParamGrid pg;
  pg.b_grid = b_grid;

  const int ns = 2 * static_cast<int>(std::round(s_max / ds)) + 1;
  pg.s_values.resize(ns);
  pg.s_weights.resize(ns);
  for (int i = 0; i < ns; ++i) {
    pg.s_values[i] = -s_max + ds * i;
    pg.s_weights[i] = (i == 0 || i == ns - 1) ? 0.5 * ds : ds;
  }

  const int nt = 2 * octaves * per_octave + 1;
  const double dt = 1.0 / per_octave;
  Eigen::ArrayXd t(nt), wt(nt);
  for (int i = 0; i < nt; ++i) {
    t[i] = -octaves + dt * i;
    wt[i] = (i == 0 || i == nt - 1) ? 0.5 * dt : dt;
  }
  const int na = both_branches ? 2 * nt : nt;
  pg.a_values.resize(na);
  pg.a_weights.resize(na);
  const double ln2 = std::log(2.0);
  for (int i = 0; i < nt; ++i) {
    const double aa = std::pow(2.0, t[i]);
    const double w = ln2 * wt[i] / (aa * aa);
    if (both_branches) {
      // negatives ascending: -2^{t_max} .. -2^{t_min}, then positives.
      pg.a_values[nt - 1 - i] = -aa;
      pg.a_weights[nt - 1 - i] = w;
      pg.a_values[nt + i] = aa;
      pg.a_weights[nt + i] = w;
    } else {
      pg.a_values[i] = aa;
      pg.a_weights[i] = w;
    }
  }
  return pg;
}

CoefficientVolume CoefficientVolume::zero(const ParamGrid& pg) {
  CoefficientVolume v;
  v.pgrid = pg;
  v.slices.assign(static_cast<size_t>(pg.ns() * pg.na()),
                  CArray::Zero(pg.b_grid.n1, pg.b_grid.n2));
  return v;
}

namespace {

// Finite-difference weights along the sampled s or a axis; stencils stay on
// one sign branch of a.
Eigen::ArrayXd axis_stencil(const Eigen::ArrayXd& nodes, Eigen::Index center, int order,
                            Eigen::Index lo, Eigen::Index hi, std::vector<Eigen::Index>& idx) {
  const Eigen::Index width = order + 3;
  if (hi - lo < width)
    throw GridTooCoarse("axis too coarse for the requested derivative order");
  Eigen::Index start = center - width / 2;
  start = std::max(lo, std::min(start, hi - width));
  idx.clear();
  Eigen::ArrayXd pts(width);
  for (Eigen::Index i = 0; i < width; ++i) {
    idx.push_back(start + i);
    pts[i] = nodes[start + i];
  }
  const Eigen::MatrixXd w = detail::fornberg_weights(nodes[center], pts, order);
  return w.col(order).array();
}

}  // namespace

double seminorm(const CoefficientVolume& vol, const SeminormIndex& idx) {
  for (int v : {idx.k1, idx.k2, idx.l, idx.m, idx.a1, idx.a2, idx.beta, idx.gamma})
    if (v < 0 || v > 4) throw OrderTooHigh("seminorm indices are capped at 4");
  const ParamGrid& pg = vol.pgrid;
  if (pg.b_grid.n1 < 5 || pg.b_grid.n2 < 5 || pg.ns() < 5)
    throw GridTooCoarse("need at least 5 nodes per axis");

  // b-derivatives per slice, spectral.
  std::vector<CArray> base(vol.slices.size());
  const MultiIndex mb(idx.a1, idx.a2);
  for (size_t k = 0; k < vol.slices.size(); ++k) {
    if (mb.order() == 0) {
      base[k] = vol.slices[k];
    } else {
      SampledField2D f{pg.b_grid, vol.slices[k]};
      base[k] = spectral_derivative(f, mb).values;
    }
  }

  // Sign-branch boundaries of the a-axis.
  const Eigen::Index na = pg.na();
  Eigen::Index neg_end = 0;
  while (neg_end < na && pg.a_values[neg_end] < 0.0) ++neg_end;

  Eigen::ArrayXd w1(pg.b_grid.n1), w2(pg.b_grid.n2);
  for (Eigen::Index j = 0; j < pg.b_grid.n1; ++j) w1[j] = angle_weight(pg.b_grid.x1(j), idx.k1);
  for (Eigen::Index j = 0; j < pg.b_grid.n2; ++j) w2[j] = angle_weight(pg.b_grid.x2(j), idx.k2);

  double sup = 0.0;
  std::vector<Eigen::Index> s_idx, a_idx;
  for (Eigen::Index ia = 0; ia < na; ++ia) {
    const double a = pg.a_values[ia];
    const Eigen::Index blo = a < 0.0 ? 0 : neg_end;
    const Eigen::Index bhi = a < 0.0 ? neg_end : na;
    Eigen::ArrayXd wa(1);
    if (idx.gamma == 0) {
      a_idx = {ia};
      wa[0] = 1.0;
    } else {
      wa = axis_stencil(pg.a_values, ia, idx.gamma, blo, bhi, a_idx);
    }
    const double aw = std::pow(std::abs(a), idx.m) + std::pow(std::abs(a), -idx.m);
    for (Eigen::Index is = 0; is < pg.ns(); ++is) {
      Eigen::ArrayXd ws(1);
      if (idx.beta == 0) {
        s_idx = {is};
        ws[0] = 1.0;
      } else {
        ws = axis_stencil(pg.s_values, is, idx.beta, 0, pg.ns(), s_idx);
      }
      CArray d = CArray::Zero(pg.b_grid.n1, pg.b_grid.n2);
      for (size_t qa = 0; qa < a_idx.size(); ++qa)
        for (size_t qs = 0; qs < s_idx.size(); ++qs)
          d += wa[static_cast<Eigen::Index>(qa)] * ws[static_cast<Eigen::Index>(qs)] *
               base[static_cast<size_t>(s_idx[qs] + pg.ns() * a_idx[qa])];
      const double sw = angle_weight(pg.s_values[is], idx.l) * aw;
      for (Eigen::Index j2 = 0; j2 < pg.b_grid.n2; ++j2)
        for (Eigen::Index j1 = 0; j1 < pg.b_grid.n1; ++j1)
          sup = std::max(sup, sw * w1[j1] * w2[j2] * std::abs(d(j1, j2)));
    }
  }
  return sup;
}

std::vector<SeminormEntry> seminorm_weight_table(const CoefficientVolume& vol, int cap) {
  if (cap < 0 || cap > 4) throw OrderTooHigh("weight cap out of range");
  const ParamGrid& pg = vol.pgrid;
  const int n = cap + 1;
  std::vector<SeminormEntry> entries(static_cast<size_t>(n * n * n * n));
  for (int k1 = 0; k1 <= cap; ++k1)
    for (int k2 = 0; k2 <= cap; ++k2)
      for (int l = 0; l <= cap; ++l)
        for (int m = 0; m <= cap; ++m) {
          SeminormEntry& e = entries[static_cast<size_t>(((k1 * n + k2) * n + l) * n + m)];
          e.idx = {k1, k2, l, m, 0, 0, 0, 0};
        }

  Eigen::ArrayXXd wb1(pg.b_grid.n1, n), wb2(pg.b_grid.n2, n);
  for (Eigen::Index j = 0; j < pg.b_grid.n1; ++j)
    for (int k = 0; k <= cap; ++k) wb1(j, k) = angle_weight(pg.b_grid.x1(j), k);
  for (Eigen::Index j = 0; j < pg.b_grid.n2; ++j)
    for (int k = 0; k <= cap; ++k) wb2(j, k) = angle_weight(pg.b_grid.x2(j), k);

  for (Eigen::Index ia = 0; ia < pg.na(); ++ia)
    for (Eigen::Index is = 0; is < pg.ns(); ++is) {
      const CArray& sl = vol.slice(is, ia);
      Eigen::ArrayXd ws(n), wa(n);
      for (int k = 0; k <= cap; ++k) {
        ws[k] = angle_weight(pg.s_values[is], k);
        wa[k] = std::pow(std::abs(pg.a_values[ia]), k) +
                std::pow(std::abs(pg.a_values[ia]), -k);
      }
      for (Eigen::Index j2 = 0; j2 < pg.b_grid.n2; ++j2)
        for (Eigen::Index j1 = 0; j1 < pg.b_grid.n1; ++j1) {
          const double v = std::abs(sl(j1, j2));
          if (v == 0.0) continue;
          for (int k1 = 0; k1 <= cap; ++k1)
            for (int k2 = 0; k2 <= cap; ++k2) {
              const double vb = v * wb1(j1, k1) * wb2(j2, k2);
              for (int l = 0; l <= cap; ++l)
                for (int m = 0; m <= cap; ++m) {
                  SeminormEntry& e =
                      entries[static_cast<size_t>(((k1 * n + k2) * n + l) * n + m)];
                  const double val = vb * ws[l] * wa[m];
                  if (val > e.value) {
                    e.value = val;
                    e.argmax_b1 = j1;
                    e.argmax_b2 = j2;
                    e.argmax_s = is;
                    e.argmax_a = ia;
                  }
                }
            }
        }
    }
  return entries;
}

double GrowthBound::weight(const GroupElement& g) const {
  return angle_weight(g.b[0], nu1) * angle_weight(g.b[1], nu1) * angle_weight(g.s, nu2) *
         0.5 * (std::pow(std::abs(g.a), nu3) + std::pow(std::abs(g.a), -nu3));
}

bool GrowthBound::dominates(const GroupElement& g, Complex value) const {
  return std::abs(value) <= c * weight(g) * (1.0 + 1e-12);
}

GrowthBound fit_growth_bound(const std::vector<std::pair<GroupElement, Complex>>& samples) {
  if (samples.size() < 10) throw DegenerateInput("growth fit needs at least 10 samples");
  constexpr int kCap = 6;
  constexpr int kProbe = kCap + 1;  // exponent 7 marks "no bound within cap"

  auto constant_for = [&](int n1, int n2, int n3) {
    double c = 0.0;
    for (const auto& [g, z] : samples) {
      GrowthBound b{1.0, n1, n2, n3};
      c = std::max(c, std::abs(z) / b.weight(g));
    }
    return c;
  };

  const double floor_c = constant_for(kProbe, kProbe, kProbe);
  GrowthBound best;
  bool found = false;
  for (int total = 0; total <= 3 * kProbe && !found; ++total)
    for (int n1 = 0; n1 <= std::min(total, kProbe) && !found; ++n1)
      for (int n2 = 0; n2 <= std::min(total - n1, kProbe) && !found; ++n2) {
        const int n3 = total - n1 - n2;
        if (n3 < 0 || n3 > kProbe) continue;
        const double c = constant_for(n1, n2, n3);
        if (c <= 1.05 * floor_c + 1e-300) {
          best = {std::max(c, 1e-300), n1, n2, n3};
          found = true;
        }
      }
  if (!found || best.nu1 > kCap || best.nu2 > kCap || best.nu3 > kCap)
    throw NoBoundWithinCap("samples demand growth exponents beyond 6");
  for (const auto& [g, z] : samples)
    if (!best.dominates(g, z)) throw DegenerateInput("fitted bound fails to dominate a sample");
  return best;
}

Complex haar_integral(const CoefficientVolume& vol, double weight_exponent) {
  const ParamGrid& pg = vol.pgrid;
  const double hb = pg.b_grid.spacing[0] * pg.b_grid.spacing[1];
  KahanSum acc;
  for (Eigen::Index ia = 0; ia < pg.na(); ++ia) {
    const double aw = std::pow(std::abs(pg.a_values[ia]), weight_exponent);
    for (Eigen::Index is = 0; is < pg.ns(); ++is) {
      const Complex s = vol.slice(is, ia).sum();
      acc.add(s * (pg.haar_weight(is, ia) * aw * hb));
    }
  }
  return acc.sum;
}

Complex haar_inner(const CoefficientVolume& a, const CoefficientVolume& b) {
  const ParamGrid& pg = a.pgrid;
  if (a.slices.size() != b.slices.size()) throw GridMismatch("volume shapes differ");
  const double hb = pg.b_grid.spacing[0] * pg.b_grid.spacing[1];
  KahanSum acc;
  for (Eigen::Index ia = 0; ia < pg.na(); ++ia)
    for (Eigen::Index is = 0; is < pg.ns(); ++is) {
      const Complex s = (a.slice(is, ia) * b.slice(is, ia).conjugate()).sum();
      acc.add(s * (pg.haar_weight(is, ia) * hb));
    }
  return acc.sum;
}

Complex haar_bilinear(const CoefficientVolume& a, const CoefficientVolume& b) {
  const ParamGrid& pg = a.pgrid;
  if (a.slices.size() != b.slices.size()) throw GridMismatch("volume shapes differ");
  const double hb = pg.b_grid.spacing[0] * pg.b_grid.spacing[1];
  KahanSum acc;
  for (Eigen::Index ia = 0; ia < pg.na(); ++ia)
    for (Eigen::Index is = 0; is < pg.ns(); ++is) {
      const Complex s = (a.slice(is, ia) * b.slice(is, ia)).sum();
      acc.add(s * (pg.haar_weight(is, ia) * hb));
    }
  return acc.sum;
}

double l2_norm_dmu(const CoefficientVolume& vol) {
  const ParamGrid& pg = vol.pgrid;
  const double hb = pg.b_grid.spacing[0] * pg.b_grid.spacing[1];
  KahanSum acc;
  for (Eigen::Index ia = 0; ia < pg.na(); ++ia)
    for (Eigen::Index is = 0; is < pg.ns(); ++is)
      acc.add(vol.slice(is, ia).abs2().sum() * (pg.haar_weight(is, ia) * hb));
  return std::sqrt(acc.sum.real());
}

}  // namespace shearkit
