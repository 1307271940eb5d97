#include "fdecay/regions.hpp"

#include "fdecay/linalg.hpp"

#include <cmath>
#include <numbers>

namespace fdecay {

double EllipseRegion::inequality(Complex z) const {
  const double dx = z.real() - center.real();
  const double dy = z.imag() - center.imag();
  double v = 0.0;
  if (a > 0)
    v += (dx / a) * (dx / a);
  else if (dx != 0.0)
    return std::numeric_limits<double>::infinity();
  if (b > 0)
    v += (dy / b) * (dy / b);
  else if (dy != 0.0)
    return std::numeric_limits<double>::infinity();
  return v;
}

std::vector<FovSample> fov_boundary(const Matrix& a, int n_angles) {
  if (a.rows() != a.cols()) throw std::invalid_argument("fov_boundary: matrix must be square");
  if (n_angles < 8) throw std::invalid_argument("fov_boundary: need n_angles >= 8");

  std::vector<FovSample> samples;
  samples.reserve(static_cast<std::size_t>(n_angles));
  for (int j = 0; j < n_angles; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / n_angles;
    const Complex rot = std::polar(1.0, theta);
    const Matrix h = 0.5 * (rot * a + std::conj(rot) * a.adjoint());
    const auto [lambda, u] = hermitian_extreme_eigenpair(h);
    const Complex p = (u.adjoint() * (a * u))(0, 0);
    samples.push_back({theta, p});
  }
  return samples;
}

EllipseRegion fit_ellipse(const std::vector<FovSample>& samples, double safety) {
  if (samples.size() < 8) throw std::invalid_argument("fit_ellipse: need at least 8 samples");
  if (safety < 1.0) throw std::invalid_argument("fit_ellipse: safety must be >= 1");

  double xmin = samples[0].point.real(), xmax = xmin;
  double ymin = samples[0].point.imag(), ymax = ymin;
  for (const auto& s : samples) {
    xmin = std::min(xmin, s.point.real());
    xmax = std::max(xmax, s.point.real());
    ymin = std::min(ymin, s.point.imag());
    ymax = std::max(ymax, s.point.imag());
  }
  const Complex center(0.5 * (xmin + xmax), 0.5 * (ymin + ymax));
  const double rx = 0.5 * (xmax - xmin);
  const double ry = 0.5 * (ymax - ymin);

  double s = 0.0;
  for (const auto& smp : samples) {
    const double dx = smp.point.real() - center.real();
    const double dy = smp.point.imag() - center.imag();
    double t = 0.0;
    if (rx > 0) t += (dx / rx) * (dx / rx);
    if (ry > 0) t += (dy / ry) * (dy / ry);
    s = std::max(s, std::sqrt(t));
  }
  if (s == 0.0) s = 1.0;  // all samples at the center
  return {center, rx * s * safety, ry * s * safety};
}

DiskRegion fit_disk(const std::vector<FovSample>& samples, double safety) {
  if (samples.empty()) throw std::invalid_argument("fit_disk: no samples");
  if (safety < 1.0) throw std::invalid_argument("fit_disk: safety must be >= 1");

  double xmin = samples[0].point.real(), xmax = xmin;
  double ymin = samples[0].point.imag(), ymax = ymin;
  for (const auto& s : samples) {
    xmin = std::min(xmin, s.point.real());
    xmax = std::max(xmax, s.point.real());
    ymin = std::min(ymin, s.point.imag());
    ymax = std::max(ymax, s.point.imag());
  }
  const Complex center(0.5 * (xmin + xmax), 0.5 * (ymin + ymax));
  double r = 0.0;
  for (const auto& s : samples) r = std::max(r, std::abs(s.point - center));
  return {center, r * safety};
}

EllipseRegion inflate_for_perturbation(const EllipseRegion& e, double eps) {
  if (eps < 0) throw std::invalid_argument("inflate_for_perturbation: eps must be >= 0");
  if (e.b <= 0) throw std::invalid_argument("inflate_for_perturbation: degenerate ellipse (b = 0)");
  return {e.center, e.a * (1.0 + eps / e.b), e.b + eps};
}

}  // namespace fdecay
