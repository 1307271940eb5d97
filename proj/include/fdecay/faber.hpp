#pragma once

#include "fdecay/regions.hpp"

#include <functional>
#include <variant>
#include <vector>

namespace fdecay {

using Region = std::variant<EllipseRegion, DiskRegion>;
using ScalarFn = std::function<Complex(Complex)>;

/// Exterior conformal map psi from {|z| > 1} onto the complement of the
/// region. Ellipse: psi(z) = c + (a+b)/2 · z + (a-b)/2 · 1/z (Joukowski
/// form, covers horizontal, vertical and disk-degenerate cases alike).
/// Disk: psi(z) = c + R z.
Complex psi(const EllipseRegion& e, Complex z);
Complex psi(const DiskRegion& d, Complex z);
Complex psi(const Region& r, Complex z);

/// Inverse map phi onto {|z| > 1}. The square-root branch is picked
/// per evaluation as the candidate of larger modulus, which matches the
/// defining property |phi| >= 1 outside the region.
Complex phi(const EllipseRegion& e, Complex w);
Complex phi(const DiskRegion& d, Complex w);
Complex phi(const Region& r, Complex w);

/// Faber coefficients of f for the region, computed on the level curve
/// |z| = tau by the n_quad-point trapezoid rule:
///   f_j = (1/2 pi i) \oint f(psi(z)) / z^{j+1} dz.
/// By construction |f_j| <= tau^{-j} max_node |f(psi)|.
struct FaberCoefficients {
  Region region;
  double tau = 0.0;
  std::vector<Complex> coeffs;  // j = 0 .. j_max
  int n_quad = 0;
};

FaberCoefficients faber_coefficients(const ScalarFn& f, const Region& region, double tau,
                                     int n_quad = 2048, int j_max = 4096);

/// Faber polynomial of the region applied to a matrix.
/// Disk: Phi_j(A) = ((A - cI)/R)^j. Ellipse: Phi_0 = I and
/// Phi_j(A) = 2 T_j((A - cI)/rho) / cap_r^j via the Chebyshev three-term
/// recurrence (complex rho handled); disk-degenerate ellipses route to
/// the disk path.
Matrix faber_poly_apply(const Region& region, int j, const Matrix& a);

/// Scalar counterpart of faber_poly_apply.
Complex faber_poly_eval(const Region& region, int j, Complex z);

/// Phi_0 .. Phi_jmax of a matrix in one recurrence pass.
std::vector<Matrix> faber_poly_sequence(const Region& region, const Matrix& a, int j_max);

/// 2 sum_{j >= xi} |f_j|, the coefficient-tail entry bound. Throws when
/// the stored coefficients have not converged by j_max.
double faber_tail_bound(const FaberCoefficients& coeffs, int xi);

/// Level-curve entry bound 2 tau/(tau-1) max_{|z|=tau}|f(psi(z))| tau^{-xi},
/// the max taken over the trapezoid nodes and inflated by 1.001.
double level_curve_bound(const ScalarFn& f, const Region& region, double tau, int xi,
                         int n_quad = 2048);

/// Log-spaced tau grid for optimize_tau.
struct TauGrid {
  double tau_min = 1.0 + 1e-3;
  double tau_max = 1e3;
  int n = 200;
};

/// Picks tau minimizing max_node|f(psi)| · tau^{-xi} over the grid (the
/// decay/size trade-off that admits closed forms for special f), with
/// local log-grid refinement. Returns the chosen tau and the level-curve
/// bound evaluated there.
std::pair<double, double> optimize_tau(const ScalarFn& f, const Region& region, int xi,
                                       const TauGrid& grid = {}, int n_quad = 2048);

}  // namespace fdecay
