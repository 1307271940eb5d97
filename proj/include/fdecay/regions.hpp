#pragma once

#include "fdecay/types.hpp"

#include <vector>

namespace fdecay {

/// One boundary sample of the field of values: the Rayleigh quotient
/// u*Au of the extreme eigenvector of the rotated Hermitian part at
/// angle theta.
struct FovSample {
  double theta = 0.0;
  Complex point;
};

/// Axis-aligned ellipse with horizontal semi-axis `a` and vertical
/// semi-axis `b`. Vertical ellipses (b > a) are representable; only the
/// exponential bound accepts them. rho = sqrt(a^2-b^2) is the focal
/// distance (imaginary for vertical ellipses) and cap_r = (a+b)/rho, so
/// rho*cap_r = a+b always.
struct EllipseRegion {
  Complex center;
  double a = 0.0;
  double b = 0.0;

  Complex rho() const { return std::sqrt(Complex(a * a - b * b, 0.0)); }
  Complex cap_r() const { return Complex(a + b, 0.0) / rho(); }

  bool vertical() const { return b > a; }
  /// a ~ b within 1e-8: rho sits in denominators, route to disk formulas.
  bool disk_like() const { return std::abs(a - b) <= 1e-8 * std::max(a, b); }
  /// b ~ 0: segment limit (Hermitian spectra).
  bool segment_like() const { return b <= 1e-8 * a; }

  /// Ellipse inequality value; <= 1 means inside. Degenerate axes use
  /// the limiting convention (exactly-centered coordinates count as 0).
  double inequality(Complex z) const;

  /// Region of -A: same semi-axes, center negated.
  EllipseRegion negated() const { return {-center, a, b}; }
};

struct DiskRegion {
  Complex center;
  double radius = 0.0;

  bool degenerate() const { return radius <= 0.0; }
};

/// Samples the boundary of the field of values W(A) at n_angles >= 8
/// equispaced rotation angles (extreme eigenvector of the Hermitian part
/// of e^{i theta} A per angle). The convex hull of the samples is an
/// inner approximation of W(A).
std::vector<FovSample> fov_boundary(const Matrix& a, int n_angles = 256);

/// Fits an axis-aligned enclosing ellipse: bounding-box center and
/// half-ranges, then both semi-axes scaled by safety times the largest
/// sample inequality value, so every sample ends up inside.
EllipseRegion fit_ellipse(const std::vector<FovSample>& samples, double safety = 1.01);

/// Fits an enclosing disk: bounding-box center, radius = safety times
/// the largest sample distance.
DiskRegion fit_disk(const std::vector<FovSample>& samples, double safety = 1.01);

/// Enlarges an ellipse to semi-axes a(1 + eps/b) and b + eps, keeping
/// the center; the boundary moves outward by at least eps everywhere.
EllipseRegion inflate_for_perturbation(const EllipseRegion& e, double eps);

}  // namespace fdecay
