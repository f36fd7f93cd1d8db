#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <utility>
#include <vector>

namespace shearkit::detail {

/// Gauss-Legendre nodes and weights on [-1, 1] (Newton on P_n).
std::pair<Eigen::ArrayXd, Eigen::ArrayXd> gauss_legendre(int n);

/// Composite Gauss-Legendre rule over [a, b]: `panels` uniform panels of
/// `order` points each.
struct Rule1D {
  Eigen::ArrayXd x;
  Eigen::ArrayXd w;
};
Rule1D panel_rule(double a, double b, int panels, int order);

/// Tensor rule over an axis-aligned rectangle.
struct Rule2D {
  Eigen::Matrix2Xd points;
  Eigen::ArrayXd weights;
};
Rule2D tensor_rule(const Eigen::Vector2d& lo, const Eigen::Vector2d& hi, int panels1,
                   int panels2, int order);

/// Fornberg finite-difference weights for the m-th derivative at x0 from
/// arbitrary nodes. Returns weights per node for derivatives 0..m.
Eigen::MatrixXd fornberg_weights(double x0, const Eigen::ArrayXd& nodes, int m);

/// Adaptive composite Gauss-Legendre integrals; panel density doubles until
/// successive passes agree to rel_tol (QuadratureNotConverged otherwise).
using Box2 = std::pair<Eigen::Vector2d, Eigen::Vector2d>;
std::complex<double> integrate_boxes(const std::vector<Box2>& boxes,
                                     const std::function<std::complex<double>(const Eigen::Vector2d&)>& f,
                                     double rel_tol, double density0 = 2.0, int max_levels = 7);
std::complex<double> integrate_intervals(const std::vector<std::pair<double, double>>& intervals,
                                         const std::function<std::complex<double>(double)>& f,
                                         double rel_tol, double density0 = 2.0, int max_levels = 9);

}  // namespace shearkit::detail
