#pragma once

#include "fdecay/regions.hpp"

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace fdecay {

/// Certified upper bound on |f(A)_{k,l}| as a function of the band
/// distance xi. Values below xi_min return the no-bound sentinel
/// (+infinity: still a valid bound, carrying no information).
struct DecayEnvelope {
  int xi_min = 1;
  std::string description;
  std::function<double(int)> fn;

  static double no_bound() { return std::numeric_limits<double>::infinity(); }
  bool valid(int xi) const { return static_cast<bool>(fn) && xi >= xi_min; }
  double operator()(int xi) const { return valid(xi) ? fn(xi) : no_bound(); }

  static DecayEnvelope none(std::string why) {
    return {std::numeric_limits<int>::max(), std::move(why), nullptr};
  }
};

/// Weight-function representation of a nondecreasing measure dmu(t) on
/// [t_lo, t_hi] (t_hi may be infinite), plus optional point masses.
struct StieltjesMeasure {
  std::function<double(double)> weight;
  double t_lo = 0.0;
  double t_hi = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, double>> point_masses;  // (t, mass)
  std::string name;
};

/// dmu = dt on [0, inf): transform of 1/z.
StieltjesMeasure measure_inverse();
/// dmu = dt on [0, 1]: transform of (1 - e^{-z})/z.
StieltjesMeasure measure_phi1();

/// Entry bound for e^A over an enclosing ellipse (vertical ellipses
/// b > a are accepted on this path only). Valid for xi > b:
///   2 e^{c1} (xi+s)/(xi+s-(a+b)) ((a+b)/xi · e^{q}/(1+sqrt(1+(a²-b²)/xi²)))^xi,
/// s = sqrt(xi² + a² - b²), q = 1 + (a²-b²)/(xi² + xi s).
DecayEnvelope exp_bound(const EllipseRegion& e);

/// Entry bound for A^{-1/2}; the region must sit in the open right
/// half-plane with a >= b, and 0 < eps <= |c| - sqrt(a(a+b)) selects the
/// exclusion ball around the branch point:
///   (2/sqrt(eps)) · tau/(tau-1) · tau^{-xi}.
DecayEnvelope invsqrt_bound(const EllipseRegion& e, double eps);

/// Entry bound for e^{-sqrt(A)}; right-half-plane region, a >= b:
///   2 · tau/(tau-1) · tau^{-xi} with tau = |phi(0)|.
DecayEnvelope expsqrt_bound(const EllipseRegion& e);

/// Entry bound at one xi for a Laplace-Stieltjes transform f of mu, with
/// W(A) inside the disk D. Splits the integral at t = xi/R; the far part
/// is controlled by the Crouzeix norm bound with sup |e^{-tw}| <=
/// e^{-t(c1-R)} over the disk.
double laplace_stieltjes_bound(const StieltjesMeasure& mu, const DiskRegion& d, int xi);

/// Closed specialization for (1 - e^{-z})/z: valid for xi > R,
///   2 xi \int_0^1 e^{-t c1}/(xi - R t) (e R t/xi)^xi dt.
DecayEnvelope phi1_bound(const DiskRegion& d);

/// Kronecker-sum bound for (1-e^{-z})/z of A ⊕ A at split distances
/// xi1, xi2 (both > R; otherwise the sentinel):
///   4 xi1 xi2 (eR)^{xi1+xi2} / (xi1^{xi1} xi2^{xi2}) sqrt(I(xi1) I(xi2)),
///   I(xi) = \int_0^1 e^{-2 t c1} t^{2 xi} / (xi - R t)^2 dt.
double kron_phi1_bound(const DiskRegion& d, int xi1, int xi2);

/// Lexicographic splitting of indices of an n²×n² Kronecker-sum matrix:
/// row = (k2-1)n + k1, col = (l2-1)n + l1, all 1-based.
struct KronIndices {
  Index k1, k2, l1, l2;
};
KronIndices lex_split(Index row, Index col, Index n);

}  // namespace fdecay
