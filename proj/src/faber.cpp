#include "fdecay/faber.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace fdecay {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::vector<Complex> level_curve_values(const ScalarFn& f, const Region& region, double tau,
                                        int n_quad) {
  std::vector<Complex> w(static_cast<std::size_t>(n_quad));
  for (int k = 0; k < n_quad; ++k) {
    const double th = 2.0 * std::numbers::pi * k / n_quad;
    w[static_cast<std::size_t>(k)] = f(psi(region, std::polar(tau, th)));
  }
  return w;
}

double max_abs(const std::vector<Complex>& w) {
  double m = 0.0;
  for (const auto& v : w) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

Complex psi(const EllipseRegion& e, Complex z) {
  if (z == Complex(0, 0)) throw std::invalid_argument("psi: z = 0 on ellipse path");
  return e.center + 0.5 * (e.a + e.b) * z + 0.5 * (e.a - e.b) / z;
}

Complex psi(const DiskRegion& d, Complex z) { return d.center + d.radius * z; }

Complex psi(const Region& r, Complex z) {
  return std::visit([&](const auto& reg) { return psi(reg, z); }, r);
}

Complex phi(const EllipseRegion& e, Complex w) {
  const Complex u = w - e.center;
  const Complex s = std::sqrt(u * u - Complex(e.a * e.a - e.b * e.b, 0.0));
  const Complex plus = (u + s) / (e.a + e.b);
  const Complex minus = (u - s) / (e.a + e.b);
  return std::abs(plus) >= std::abs(minus) ? plus : minus;
}

Complex phi(const DiskRegion& d, Complex w) { return (w - d.center) / d.radius; }

Complex phi(const Region& r, Complex w) {
  return std::visit([&](const auto& reg) { return phi(reg, w); }, r);
}

FaberCoefficients faber_coefficients(const ScalarFn& f, const Region& region, double tau,
                                     int n_quad, int j_max) {
  if (!(tau > 1.0)) throw std::invalid_argument("faber_coefficients: requires tau > 1");
  if (!power_of_two(n_quad) || n_quad < 256)
    throw std::invalid_argument("faber_coefficients: n_quad must be a power of two >= 256");
  if (j_max < 0) throw std::invalid_argument("faber_coefficients: j_max must be >= 0");

  const auto w = level_curve_values(f, region, tau, n_quad);
  for (const auto& v : w)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::domain_error(
          "faber_coefficients: f not finite on the level curve (tau outside analyticity region)");

  FaberCoefficients out{region, tau, {}, n_quad};
  out.coeffs.assign(static_cast<std::size_t>(j_max) + 1, Complex(0, 0));

  std::vector<Complex> zinv(static_cast<std::size_t>(n_quad));
  std::vector<Complex> p(static_cast<std::size_t>(n_quad), Complex(1, 0));
  for (int k = 0; k < n_quad; ++k)
    zinv[static_cast<std::size_t>(k)] =
        std::polar(1.0 / tau, -2.0 * std::numbers::pi * k / n_quad);

  for (int j = 0; j <= j_max; ++j) {
    Complex acc(0, 0);
    for (int k = 0; k < n_quad; ++k) {
      const auto sk = static_cast<std::size_t>(k);
      acc += w[sk] * p[sk];
      p[sk] *= zinv[sk];
    }
    out.coeffs[static_cast<std::size_t>(j)] = acc / static_cast<double>(n_quad);
  }
  return out;
}

namespace {

// Disk path uses the exact radius for DiskRegion and the mean semi-axis
// for disk-degenerate ellipses (identical at a = b).
struct DiskParams {
  Complex center;
  double radius;
};

std::optional<DiskParams> disk_params(const Region& region) {
  if (std::holds_alternative<DiskRegion>(region)) {
    const auto& d = std::get<DiskRegion>(region);
    return DiskParams{d.center, d.radius};
  }
  const auto& e = std::get<EllipseRegion>(region);
  if (e.disk_like()) return DiskParams{e.center, 0.5 * (e.a + e.b)};
  return std::nullopt;
}

}  // namespace

std::vector<Matrix> faber_poly_sequence(const Region& region, const Matrix& a, int j_max) {
  if (a.rows() != a.cols()) throw std::invalid_argument("faber_poly_sequence: matrix not square");
  if (j_max < 0) throw std::invalid_argument("faber_poly_sequence: j_max must be >= 0");
  const Index n = a.rows();
  const Matrix id = Matrix::Identity(n, n);

  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(j_max) + 1);
  out.push_back(id);
  if (j_max == 0) return out;

  if (const auto dp = disk_params(region)) {
    const Matrix x = (a - dp->center * id) / dp->radius;
    Matrix power = id;
    for (int j = 1; j <= j_max; ++j) {
      power = (power * x).eval();
      out.push_back(power);
    }
    return out;
  }

  const auto& e = std::get<EllipseRegion>(region);
  const Complex rho = e.rho();
  const Complex r = e.cap_r();
  const Matrix x = (a - e.center * id) / rho;
  Matrix t_prev = id;  // T_0
  Matrix t_cur = x;    // T_1
  Complex rpow = r;
  out.push_back(2.0 * t_cur / rpow);
  for (int j = 2; j <= j_max; ++j) {
    Matrix t_next = 2.0 * (x * t_cur).eval() - t_prev;
    t_prev = std::move(t_cur);
    t_cur = std::move(t_next);
    rpow *= r;
    out.push_back(2.0 * t_cur / rpow);
  }
  return out;
}

Matrix faber_poly_apply(const Region& region, int j, const Matrix& a) {
  auto seq = faber_poly_sequence(region, a, j);
  return seq.back();
}

Complex faber_poly_eval(const Region& region, int j, Complex z) {
  Matrix a(1, 1);
  a(0, 0) = z;
  return faber_poly_apply(region, j, a)(0, 0);
}

double faber_tail_bound(const FaberCoefficients& coeffs, int xi) {
  if (xi < 0) throw std::invalid_argument("faber_tail_bound: xi must be >= 0");
  const auto j_max = static_cast<int>(coeffs.coeffs.size()) - 1;
  if (xi > j_max)
    throw std::invalid_argument("faber_tail_bound: coefficients not computed up to xi");

  double total = 0.0;
  for (int j = xi; j <= j_max; ++j) total += std::abs(coeffs.coeffs[static_cast<std::size_t>(j)]);
  double last = 0.0;
  for (int j = std::max(xi, j_max - 9); j <= j_max; ++j)
    last += std::abs(coeffs.coeffs[static_cast<std::size_t>(j)]);
  if (xi + 10 <= j_max && last > 1e-15 * (total + 1e-300) && last > 0.0)
    throw std::runtime_error("faber_tail_bound: tail not converged by j_max");
  return 2.0 * total;
}

double level_curve_bound(const ScalarFn& f, const Region& region, double tau, int xi,
                         int n_quad) {
  if (!(tau > 1.0)) throw std::invalid_argument("level_curve_bound: requires tau > 1");
  if (xi < 1) throw std::invalid_argument("level_curve_bound: requires xi >= 1");
  const double m = max_abs(level_curve_values(f, region, tau, n_quad));
  if (!std::isfinite(m))
    throw std::domain_error("level_curve_bound: f not finite on the level curve");
  return 2.0 * (tau / (tau - 1.0)) * m * 1.001 * std::exp(-xi * std::log(tau));
}

namespace {

// log of max_node|f(psi)|·tau^{-xi}; +inf marks inadmissible tau.
double log_target(const ScalarFn& f, const Region& region, double tau, int xi, int n_quad) {
  const double m = max_abs(level_curve_values(f, region, tau, n_quad));
  if (!std::isfinite(m)) return std::numeric_limits<double>::infinity();
  if (m == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(m) - xi * std::log(tau);
}

std::vector<double> log_space(double lo, double hi, int n) {
  std::vector<double> g;
  if (n <= 1 || hi <= lo) {
    g.push_back(lo);
    return g;
  }
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < n; ++i) g.push_back(std::exp(llo + (lhi - llo) * i / (n - 1)));
  return g;
}

}  // namespace

std::pair<double, double> optimize_tau(const ScalarFn& f, const Region& region, int xi,
                                       const TauGrid& grid, int n_quad) {
  if (!(grid.tau_min > 1.0)) throw std::invalid_argument("optimize_tau: tau_min must be > 1");
  if (grid.tau_max < grid.tau_min)
    throw std::invalid_argument("optimize_tau: empty tau grid");

  auto taus = log_space(grid.tau_min, grid.tau_max, grid.n);
  double best_tau = 0.0;
  double best_lt = std::numeric_limits<double>::infinity();
  std::size_t best_i = 0;
  for (int round = 0; round < 3; ++round) {
    for (std::size_t i = 0; i < taus.size(); ++i) {
      const double lt = log_target(f, region, taus[i], xi, n_quad);
      if (lt < best_lt) {
        best_lt = lt;
        best_tau = taus[i];
        best_i = i;
      }
    }
    if (!(best_lt < std::numeric_limits<double>::infinity()))
      throw std::domain_error("optimize_tau: no admissible tau on the grid");
    if (taus.size() <= 1) break;
    const double lo = best_i > 0 ? taus[best_i - 1] : taus[best_i];
    const double hi = best_i + 1 < taus.size() ? taus[best_i + 1] : taus[best_i];
    if (hi <= lo) break;
    taus = log_space(lo, hi, 41);
    best_i = 0;
    best_lt = std::numeric_limits<double>::infinity();
  }
  return {best_tau, level_curve_bound(f, region, best_tau, xi, n_quad)};
}

}  // namespace fdecay
