#pragma once

#include <Eigen/Dense>
#include <complex>

#include "shearkit/errors.hpp"

namespace shearkit {

using Complex = std::complex<double>;
using CArray = Eigen::ArrayXXcd;  // (n1, n2), first index fastest in memory

constexpr int kMaxOrder = 10;  // cap on derivative / moment orders

/// Uniform rectangular grid on R^2. Symmetric about the origin by default:
/// x_j = origin + j * spacing, j = 0..n-1, origin = -(n/2) * spacing.
struct Grid2D {
  Eigen::Index n1 = 0, n2 = 0;
  Eigen::Vector2d origin{0.0, 0.0};
  Eigen::Vector2d spacing{1.0, 1.0};

  static Grid2D symmetric(Eigen::Index n1, Eigen::Index n2, double half_width1,
                          double half_width2) {
    if (n1 < 8 || n2 < 8) throw GridMismatch("grid needs at least 8 samples per axis");
    if (!(half_width1 > 0.0) || !(half_width2 > 0.0))
      throw GridMismatch("grid half-width must be positive");
    Grid2D g;
    g.n1 = n1;
    g.n2 = n2;
    g.spacing = {2.0 * half_width1 / static_cast<double>(n1),
                 2.0 * half_width2 / static_cast<double>(n2)};
    g.origin = {-static_cast<double>(n1 / 2) * g.spacing[0],
                -static_cast<double>(n2 / 2) * g.spacing[1]};
    return g;
  }
  static Grid2D symmetric(Eigen::Index n, double half_width) {
    return symmetric(n, n, half_width, half_width);
  }

  double x1(Eigen::Index j) const { return origin[0] + static_cast<double>(j) * spacing[0]; }
  double x2(Eigen::Index j) const { return origin[1] + static_cast<double>(j) * spacing[1]; }
  Eigen::Vector2d point(Eigen::Index j1, Eigen::Index j2) const { return {x1(j1), x2(j2)}; }

  Eigen::Vector2d half_extent() const {
    return {0.5 * static_cast<double>(n1) * spacing[0],
            0.5 * static_cast<double>(n2) * spacing[1]};
  }

  /// Centered dual grid: same sample counts, spacing 1/(n*h).
  Grid2D dual() const {
    Grid2D d;
    d.n1 = n1;
    d.n2 = n2;
    d.spacing = {1.0 / (static_cast<double>(n1) * spacing[0]),
                 1.0 / (static_cast<double>(n2) * spacing[1])};
    d.origin = {-static_cast<double>(n1 / 2) * d.spacing[0],
                -static_cast<double>(n2 / 2) * d.spacing[1]};
    return d;
  }

  bool same_as(const Grid2D& o, double tol = 1e-9) const {
    return n1 == o.n1 && n2 == o.n2 && (origin - o.origin).cwiseAbs().maxCoeff() <= tol &&
           (spacing - o.spacing).cwiseAbs().maxCoeff() <= tol;
  }
};

/// Complex samples of a function on a spatial grid; the concrete stand-in
/// for a test function on R^2.
struct SampledField2D {
  Grid2D grid;
  CArray values;

  static SampledField2D zero(const Grid2D& g) {
    return {g, CArray::Zero(g.n1, g.n2)};
  }
};

/// Complex samples on a frequency grid (cycles per spatial unit).
struct FrequencyField2D {
  Grid2D grid;
  CArray values;

  static FrequencyField2D zero(const Grid2D& g) {
    return {g, CArray::Zero(g.n1, g.n2)};
  }
};

struct MultiIndex {
  int m1 = 0;
  int m2 = 0;

  MultiIndex() = default;
  MultiIndex(int a, int b) : m1(a), m2(b) {
    if (a < 0 || b < 0) throw OrderTooHigh("multi-index components must be nonnegative");
    if (a + b > kMaxOrder) throw OrderTooHigh("|m| exceeds max order");
  }
  int order() const { return m1 + m2; }
  bool operator==(const MultiIndex& o) const { return m1 == o.m1 && m2 == o.m2; }
  bool operator<(const MultiIndex& o) const {
    return m1 != o.m1 ? m1 < o.m1 : m2 < o.m2;
  }
};

inline void check_finite(const CArray& v, const char* what) {
  if (!v.isFinite().all()) throw DegenerateInput(std::string(what) + " contains NaN/Inf");
}

}  // namespace shearkit
