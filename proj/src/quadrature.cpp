#include "shearkit/detail/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "shearkit/errors.hpp"

namespace shearkit::detail {

std::pair<Eigen::ArrayXd, Eigen::ArrayXd> gauss_legendre(int n) {
  static std::map<int, std::pair<Eigen::ArrayXd, Eigen::ArrayXd>> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  Eigen::ArrayXd x(n), w(n);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(M_PI * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      dp = static_cast<double>(n) * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[i] = t;
    w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
  cache[n] = {x, w};
  return cache[n];
}

Rule1D panel_rule(double a, double b, int panels, int order) {
  const auto [gx, gw] = gauss_legendre(order);
  Rule1D r;
  r.x.resize(panels * order);
  r.w.resize(panels * order);
  const double width = (b - a) / static_cast<double>(panels);
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double mid = lo + 0.5 * width;
    for (int q = 0; q < order; ++q) {
      r.x[p * order + q] = mid + 0.5 * width * gx[q];
      r.w[p * order + q] = 0.5 * width * gw[q];
    }
  }
  return r;
}

Rule2D tensor_rule(const Eigen::Vector2d& lo, const Eigen::Vector2d& hi, int panels1,
                   int panels2, int order) {
  const Rule1D r1 = panel_rule(lo[0], hi[0], panels1, order);
  const Rule1D r2 = panel_rule(lo[1], hi[1], panels2, order);
  const Eigen::Index n1 = r1.x.size(), n2 = r2.x.size();
  Rule2D r;
  r.points.resize(2, n1 * n2);
  r.weights.resize(n1 * n2);
  for (Eigen::Index j = 0; j < n2; ++j)
    for (Eigen::Index i = 0; i < n1; ++i) {
      r.points(0, j * n1 + i) = r1.x[i];
      r.points(1, j * n1 + i) = r2.x[j];
      r.weights[j * n1 + i] = r1.w[i] * r2.w[j];
    }
  return r;
}

std::complex<double> integrate_boxes(
    const std::vector<Box2>& boxes,
    const std::function<std::complex<double>(const Eigen::Vector2d&)>& f, double rel_tol,
    double density0, int max_levels) {
  auto pass = [&](double density) {
    std::complex<double> acc = 0.0;
    for (const Box2& b : boxes) {
      if (b.second[0] <= b.first[0] || b.second[1] <= b.first[1]) continue;
      const int p1 =
          std::max<int>(1, static_cast<int>(std::ceil((b.second[0] - b.first[0]) * density)));
      const int p2 =
          std::max<int>(1, static_cast<int>(std::ceil((b.second[1] - b.first[1]) * density)));
      const Rule2D rule = tensor_rule(b.first, b.second, p1, p2, 12);
      for (Eigen::Index q = 0; q < rule.weights.size(); ++q)
        acc += rule.weights[q] * f(rule.points.col(q));
    }
    return acc;
  };
  double density = density0;
  std::complex<double> prev = pass(density);
  for (int level = 0; level < max_levels; ++level) {
    density *= 2.0;
    const std::complex<double> next = pass(density);
    const double diff = std::abs(next - prev);
    prev = next;
    if (diff <= rel_tol * std::max(1e-30, std::abs(next))) return prev;
    if (std::abs(next) < 1e-14 && diff < 1e-14) return prev;
  }
  throw QuadratureNotConverged("box quadrature did not settle");
}

std::complex<double> integrate_intervals(const std::vector<std::pair<double, double>>& intervals,
                                         const std::function<std::complex<double>(double)>& f,
                                         double rel_tol, double density0, int max_levels) {
  auto pass = [&](double density) {
    std::complex<double> acc = 0.0;
    for (const auto& [a, b] : intervals) {
      if (b <= a) continue;
      const int panels = std::max<int>(1, static_cast<int>(std::ceil((b - a) * density)));
      const Rule1D rule = panel_rule(a, b, panels, 12);
      for (Eigen::Index q = 0; q < rule.x.size(); ++q) acc += rule.w[q] * f(rule.x[q]);
    }
    return acc;
  };
  double density = density0;
  std::complex<double> prev = pass(density);
  for (int level = 0; level < max_levels; ++level) {
    density *= 2.0;
    const std::complex<double> next = pass(density);
    const double diff = std::abs(next - prev);
    prev = next;
    if (diff <= rel_tol * std::max(1e-30, std::abs(next))) return prev;
    if (std::abs(next) < 1e-14 && diff < 1e-14) return prev;
  }
  throw QuadratureNotConverged("interval quadrature did not settle");
}

Eigen::MatrixXd fornberg_weights(double x0, const Eigen::ArrayXd& nodes, int m) {
  const int n = static_cast<int>(nodes.size()) - 1;
  // Classic Fornberg recursion, c(j, k) = weight of node j for derivative k.
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n + 1, m + 1);
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c(0, 0) = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c(i, k) = c1 * (k * c(i - 1, k - 1) - c5 * c(i - 1, k)) / c2;
        c(i, 0) = -c1 * c5 * c(i - 1, 0) / c2;
      }
      for (int k = mn; k >= 1; --k) c(j, k) = (c4 * c(j, k) - k * c(j, k - 1)) / c3;
      c(j, 0) = c4 * c(j, 0) / c3;
    }
    c1 = c2;
  }
  return c;
}

}  // namespace shearkit::detail
