#include "fdecay/envelopes.hpp"

#include "fdecay/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace fdecay {

namespace {

constexpr double kQuadTol = 1e-12;

std::string describe_ellipse(const EllipseRegion& e) {
  std::ostringstream os;
  os << "ellipse(a=" << e.a << ", b=" << e.b << ", c=" << e.center.real();
  if (e.center.imag() != 0) os << (e.center.imag() > 0 ? "+" : "") << e.center.imag() << "i";
  os << ")";
  return os.str();
}

std::string describe_disk(const DiskRegion& d) {
  std::ostringstream os;
  os << "disk(c=" << d.center.real();
  if (d.center.imag() != 0) os << (d.center.imag() > 0 ? "+" : "") << d.center.imag() << "i";
  os << ", R=" << d.radius << ")";
  return os.str();
}

void require_right_half_plane(const EllipseRegion& e, const char* who) {
  if (!(e.center.real() - e.a > 0))
    throw std::domain_error(std::string(who) + ": region not in the open right half-plane");
}

void require_horizontal(const EllipseRegion& e, const char* who) {
  if (e.vertical())
    throw std::invalid_argument(std::string(who) + ": vertical ellipse (b > a) not supported");
}

// |z0 + sqrt(z0^2 - rho^2)| with the modulus-maximizing branch, over a+b.
double exterior_modulus(Complex z0, double rho2, double a_plus_b) {
  const Complex s = std::sqrt(z0 * z0 - Complex(rho2, 0.0));
  return std::max(std::abs(z0 + s), std::abs(z0 - s)) / a_plus_b;
}

double phi1_integrand(double t, double c1, double radius, double xi) {
  if (t <= 0.0) return 0.0;
  return std::exp(-t * c1) / (xi - radius * t) *
         std::pow(std::numbers::e * radius * t / xi, xi);
}

}  // namespace

StieltjesMeasure measure_inverse() {
  StieltjesMeasure mu;
  mu.weight = [](double) { return 1.0; };
  mu.t_lo = 0.0;
  mu.t_hi = std::numeric_limits<double>::infinity();
  mu.name = "inverse";
  return mu;
}

StieltjesMeasure measure_phi1() {
  StieltjesMeasure mu;
  mu.weight = [](double) { return 1.0; };
  mu.t_lo = 0.0;
  mu.t_hi = 1.0;
  mu.name = "phi1";
  return mu;
}

DecayEnvelope exp_bound(const EllipseRegion& e) {
  if (!(e.a > 0) || !(e.b >= 0))
    throw std::invalid_argument("exp_bound: semi-axes must be positive");
  const double a = e.a, b = e.b, c1 = e.center.real();
  const double d2 = a * a - b * b;
  DecayEnvelope env;
  env.xi_min = static_cast<int>(std::floor(b)) + 1;
  env.description = "exp over " + describe_ellipse(e);
  env.fn = [a, b, c1, d2](int xi_i) {
    const double xi = xi_i;
    const double s = std::sqrt(xi * xi + d2);
    const double q = 1.0 + d2 / (xi * xi + xi * s);
    const double pref = 2.0 * std::exp(c1) * (xi + s) / (xi + s - (a + b));
    const double base = (a + b) / xi * std::exp(q) / (1.0 + std::sqrt(1.0 + d2 / (xi * xi)));
    return pref * std::pow(base, xi);
  };
  return env;
}

DecayEnvelope invsqrt_bound(const EllipseRegion& e, double eps) {
  require_horizontal(e, "invsqrt_bound");
  require_right_half_plane(e, "invsqrt_bound");
  const double abs_c = std::abs(e.center);
  const double eps_max = abs_c - std::sqrt(e.a * (e.a + e.b));
  if (!(eps > 0) || !(eps <= eps_max))
    throw std::invalid_argument("invsqrt_bound: eps out of range (0, |c| - sqrt(a(a+b))]");

  const Complex z0 = e.center * (1.0 - eps / abs_c);
  const double tau = exterior_modulus(z0, e.a * e.a - e.b * e.b, e.a + e.b);
  if (tau <= 1.0 + 1e-12)
    return DecayEnvelope::none("invsqrt over " + describe_ellipse(e) + ": tau at the 1 boundary");

  DecayEnvelope env;
  env.xi_min = 1;
  env.description = "invsqrt over " + describe_ellipse(e);
  env.fn = [eps, tau](int xi) {
    return 2.0 / std::sqrt(eps) * tau / (tau - 1.0) * std::exp(-xi * std::log(tau));
  };
  return env;
}

DecayEnvelope expsqrt_bound(const EllipseRegion& e) {
  require_horizontal(e, "expsqrt_bound");
  require_right_half_plane(e, "expsqrt_bound");
  const double tau = exterior_modulus(e.center, e.a * e.a - e.b * e.b, e.a + e.b);
  if (tau <= 1.0 + 1e-12)
    throw std::domain_error("expsqrt_bound: region too close to the origin (tau <= 1)");

  DecayEnvelope env;
  env.xi_min = 1;
  env.description = "expsqrt over " + describe_ellipse(e);
  env.fn = [tau](int xi) {
    return 2.0 * tau / (tau - 1.0) * std::exp(-xi * std::log(tau));
  };
  return env;
}

double laplace_stieltjes_bound(const StieltjesMeasure& mu, const DiskRegion& d, int xi) {
  if (xi < 1) throw std::invalid_argument("laplace_stieltjes_bound: xi must be >= 1");
  const double c1 = d.center.real();
  const double radius = d.radius;
  if (radius == 0.0) return 0.0;  // zero-radius region: the head integrand vanishes

  const double split = xi / radius;
  double bound = 0.0;

  // Near part, t <= xi/R: per-t exponential entry bound.
  const double head_hi = std::min(mu.t_hi, split);
  if (head_hi > mu.t_lo) {
    const double head = integrate_adaptive(
        [&](double t) { return mu.weight(t) * phi1_integrand(t, c1, radius, xi); }, mu.t_lo,
        head_hi, kQuadTol);
    bound += 2.0 * xi * head;
  }
  for (const auto& [t, mass] : mu.point_masses)
    if (t >= mu.t_lo && t <= head_hi) bound += 2.0 * xi * mass * phi1_integrand(t, c1, radius, xi);

  // Far part, t > xi/R: Crouzeix norm bound with sup over the disk.
  if (mu.t_hi > split) {
    const double rate = c1 - radius;
    double far_hi = mu.t_hi;
    if (!std::isfinite(far_hi)) {
      if (rate <= 0)
        throw std::domain_error(
            "laplace_stieltjes_bound: nonconvergent tail (c1 <= R with infinite support)");
      far_hi = split + 60.0 / rate;  // e^{-60} is far below every tolerance in use
    }
    if (far_hi > split) {
      const double far = integrate_adaptive(
          [&](double t) { return mu.weight(t) * std::exp(-t * rate); }, split, far_hi, kQuadTol);
      bound += crouzeix_constant * far;
    }
    for (const auto& [t, mass] : mu.point_masses)
      if (t > split && t <= mu.t_hi)
        bound += crouzeix_constant * mass * std::exp(-t * rate);
  }
  return bound;
}

DecayEnvelope phi1_bound(const DiskRegion& d) {
  const double c1 = d.center.real();
  const double radius = d.radius;
  DecayEnvelope env;
  env.xi_min = static_cast<int>(std::floor(radius)) + 1;
  env.description = "phi1 over " + describe_disk(d);
  env.fn = [c1, radius](int xi_i) {
    const double xi = xi_i;
    if (radius == 0.0) return 0.0;
    return 2.0 * xi *
           integrate_adaptive([&](double t) { return phi1_integrand(t, c1, radius, xi); }, 0.0,
                              1.0, kQuadTol);
  };
  return env;
}

double kron_phi1_bound(const DiskRegion& d, int xi1, int xi2) {
  const double radius = d.radius;
  if (xi1 <= radius || xi2 <= radius) return DecayEnvelope::no_bound();
  const double c1 = d.center.real();

  auto log_i = [&](int xi_i) {
    const double xi = xi_i;
    const double v = integrate_adaptive(
        [&](double t) {
          const double den = xi - radius * t;
          return std::exp(-2.0 * t * c1) * std::pow(t, 2.0 * xi) / (den * den);
        },
        0.0, 1.0, kQuadTol);
    return std::log(v);
  };

  const double x1 = xi1, x2 = xi2;
  const double log_bound = std::log(4.0) + std::log(x1) + std::log(x2) +
                           (x1 + x2) * (1.0 + std::log(radius)) - x1 * std::log(x1) -
                           x2 * std::log(x2) + 0.5 * (log_i(xi1) + log_i(xi2));
  return std::exp(log_bound);
}

KronIndices lex_split(Index row, Index col, Index n) {
  if (n < 1) throw std::invalid_argument("lex_split: n must be >= 1");
  if (row < 1 || row > n * n || col < 1 || col > n * n)
    throw std::invalid_argument("lex_split: index out of range");
  return {(row - 1) % n + 1, (row - 1) / n + 1, (col - 1) % n + 1, (col - 1) / n + 1};
}

}  // namespace fdecay
