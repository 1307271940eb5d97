#include "fdecay/quadrature.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

namespace fdecay {

namespace {

// Gauss-Kronrod (7,15) nodes and weights on [-1,1] (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo, hi, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)>& g, double lo, double hi) {
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  const double f0 = g(c);
  double resk = kWgk[7] * f0;
  double resg = kWg[3] * f0;
  for (int i = 0; i < 7; ++i) {
    const double fa = g(c - h * kXgk[i]);
    const double fb = g(c + h * kXgk[i]);
    resk += kWgk[i] * (fa + fb);
    if (i % 2 == 1) resg += kWg[i / 2] * (fa + fb);
  }
  Segment s{lo, hi, resk * h, std::abs((resk - resg) * h)};
  if (!std::isfinite(s.value))
    throw std::runtime_error("integrate_adaptive: integrand not finite");
  return s;
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& g, double lo, double hi,
                          double tol, int max_intervals) {
  if (!(lo < hi)) throw std::invalid_argument("integrate_adaptive: requires lo < hi");
  if (!(tol > 0)) throw std::invalid_argument("integrate_adaptive: requires tol > 0");

  std::priority_queue<Segment> queue;
  queue.push(gk15(g, lo, hi));
  double total = queue.top().value;
  double err = queue.top().error;
  int n = 1;
  while (err > tol * (1.0 + std::abs(total))) {
    if (n >= max_intervals)
      throw std::runtime_error("integrate_adaptive: subdivision limit exceeded");
    const Segment worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi)
      throw std::runtime_error("integrate_adaptive: interval collapsed below resolution");
    const Segment left = gk15(g, worst.lo, mid);
    const Segment right = gk15(g, mid, worst.hi);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++n;
  }
  return total;
}

}  // namespace fdecay
