#include "fdecay/regions.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace fdecay;

namespace {
std::vector<FovSample> point_samples(const std::vector<Complex>& pts) {
  std::vector<FovSample> out;
  double th = 0;
  for (auto p : pts) out.push_back({th += 0.1, p});
  return out;
}
}  // namespace

TEST_CASE("fov_boundary of a Hermitian matrix stays on the real interval") {
  Matrix a = Matrix::Zero(2, 2);
  a(1, 1) = 1.0;
  for (const auto& s : fov_boundary(a, 16)) {
    CHECK(std::abs(s.point.imag()) < 1e-10);
    CHECK(s.point.real() > -1e-10);
    CHECK(s.point.real() < 1.0 + 1e-10);
  }
}

TEST_CASE("fov_boundary of the Jordan block is the half-unit circle") {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 1) = 1.0;
  const auto samples = fov_boundary(a, 64);
  for (const auto& s : samples) CHECK(std::abs(std::abs(s.point) - 0.5) < 1e-8);

  // Independent check of the radius: no random Rayleigh quotient exceeds it.
  auto gen = test::rng(31);
  double best = 0;
  for (int k = 0; k < 1000000; ++k) {
    const Vector v = test::random_unit_vector(2, gen);
    best = std::max(best, std::abs((v.adjoint() * (a * v))(0, 0)));
  }
  CHECK(best <= 0.5 + 1e-9);
  CHECK(best > 0.5 - 1e-3);
}

TEST_CASE("fov_boundary of a normal matrix stays in the eigenvalue hull") {
  Matrix a = Matrix::Zero(3, 3);
  a(1, 1) = 1.0;
  a(2, 2) = Complex(0, 1);
  for (const auto& s : fov_boundary(a, 64)) {
    // hull of {0, 1, i}: x >= 0, y >= 0, x + y <= 1
    CHECK(s.point.real() >= -1e-10);
    CHECK(s.point.imag() >= -1e-10);
    CHECK(s.point.real() + s.point.imag() <= 1.0 + 1e-10);
  }
}

TEST_CASE("fov_boundary rejects tiny angle counts") {
  CHECK_THROWS_AS(fov_boundary(Matrix::Identity(2, 2), 4), std::invalid_argument);
}

TEST_CASE("fit_ellipse") {
  SUBCASE("unit cross becomes the unit disk") {
    const auto e = fit_ellipse(
        point_samples({{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}}), 1.0);
    CHECK(std::abs(e.center) < 1e-15);
    CHECK(e.a == doctest::Approx(1.0));
    CHECK(e.b == doctest::Approx(1.0));
    CHECK(e.disk_like());
  }

  SUBCASE("bounding half-ranges") {
    const auto e = fit_ellipse(point_samples({{2, 0},
                                              {-2, 0},
                                              {0, 0.5},
                                              {0, -0.5},
                                              {2, 0},
                                              {-2, 0},
                                              {0, 0.5},
                                              {0, -0.5}}),
                               1.0);
    CHECK(e.a == doctest::Approx(2.0));
    CHECK(e.b == doctest::Approx(0.5));
  }

  SUBCASE("recovers a synthetic boundary within 5 percent") {
    std::vector<FovSample> samples;
    for (int j = 0; j < 256; ++j) {
      const double th = 2 * std::numbers::pi * j / 256;
      samples.push_back({th, Complex(2 + 3 * std::cos(th), std::sin(th))});
    }
    const auto e = fit_ellipse(samples);
    CHECK(std::abs(e.a - 3.0) < 0.15);
    CHECK(std::abs(e.b - 1.0) < 0.05);
    CHECK(std::abs(e.center - Complex(2, 0)) < 1e-12);
    for (const auto& s : samples) CHECK(e.inequality(s.point) <= 1.0 + 1e-12);
  }

  SUBCASE("argument checks") {
    CHECK_THROWS_AS(fit_ellipse(point_samples({{1, 0}}), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(
        fit_ellipse(point_samples({{1, 0}, {1, 0}, {1, 0}, {1, 0}, {1, 0}, {1, 0}, {1, 0}, {1, 0}}),
                    0.5),
        std::invalid_argument);
  }
}

TEST_CASE("fit_disk") {
  const auto d = fit_disk(point_samples({{1, 0}, {-1, 0}}), 1.25);
  CHECK(std::abs(d.center) < 1e-15);
  CHECK(d.radius == doctest::Approx(1.25));

  const auto single = fit_disk(point_samples({{2, 1}, {2, 1}, {2, 1}}), 1.0);
  CHECK(single.center == Complex(2, 1));
  CHECK(single.degenerate());

  std::vector<FovSample> circle;
  for (int j = 0; j < 64; ++j) {
    const double th = 2 * std::numbers::pi * j / 64;
    circle.push_back({th, Complex(3 + 2 * std::cos(th), 2 * std::sin(th))});
  }
  const auto c = fit_disk(circle, 1.01);
  CHECK(std::abs(c.center - Complex(3, 0)) < 1e-3);
  CHECK(c.radius == doctest::Approx(2.0 * 1.01).epsilon(1e-3));
}

TEST_CASE("inflate_for_perturbation") {
  const EllipseRegion e{{0, 0}, 2.0, 1.0};
  const auto grown = inflate_for_perturbation(e, 0.1);
  CHECK(grown.a == doctest::Approx(2.2));
  CHECK(grown.b == doctest::Approx(1.1));

  const auto same = inflate_for_perturbation(e, 0.0);
  CHECK(same.a == e.a);
  CHECK(same.b == e.b);

  const auto disk = inflate_for_perturbation({{1, 1}, 1.0, 1.0}, 0.5);
  CHECK(disk.a == doctest::Approx(1.5));
  CHECK(disk.b == doctest::Approx(1.5));

  CHECK_THROWS_AS(inflate_for_perturbation({{0, 0}, 1.0, 0.0}, 0.1), std::invalid_argument);
}

TEST_CASE("inflation nests monotonically and clears the gap") {
  const EllipseRegion e{{3, -1}, 2.5, 1.0};
  const auto e1 = inflate_for_perturbation(e, 0.05);
  const auto e2 = inflate_for_perturbation(e, 0.20);

  for (int j = 0; j < 720; ++j) {
    const double th = 2 * std::numbers::pi * j / 720;
    const Complex z1(e1.center.real() + e1.a * std::cos(th),
                     e1.center.imag() + e1.b * std::sin(th));
    CHECK(e2.inequality(z1) <= 1.0 + 1e-12);  // smaller inflation inside larger
  }

  // Sampled boundary-to-boundary distance stays above eps.
  const double eps = 0.05;
  std::vector<Complex> inner, outer;
  for (int j = 0; j < 720; ++j) {
    const double th = 2 * std::numbers::pi * j / 720;
    inner.emplace_back(e.center.real() + e.a * std::cos(th), e.center.imag() + e.b * std::sin(th));
    outer.emplace_back(e1.center.real() + e1.a * std::cos(th),
                       e1.center.imag() + e1.b * std::sin(th));
  }
  double min_dist = 1e300;
  for (const auto& zi : inner)
    for (const auto& zo : outer) min_dist = std::min(min_dist, std::abs(zi - zo));
  CHECK(min_dist >= eps * (1 - 1e-6));
}

TEST_CASE("fitted regions contain their samples for random matrices") {
  auto gen = test::rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = test::random_matrix(6, 6, gen);
    const auto samples = fov_boundary(a, 32);
    const auto e = fit_ellipse(samples);
    const auto d = fit_disk(samples);
    for (const auto& s : samples) {
      CHECK(e.inequality(s.point) <= 1.0 + 1e-12);
      CHECK(std::abs(s.point - d.center) <= d.radius + 1e-12);
    }
  }
}

TEST_CASE("Hermitian matrices fit a segment-degenerate ellipse") {
  auto gen = test::rng(43);
  const Matrix h = test::random_hermitian(7, gen);
  const auto e = fit_ellipse(fov_boundary(h, 32));
  CHECK(e.b <= 1e-8 * e.a);
  CHECK(e.segment_like());
}

TEST_CASE("ellipse derived quantities") {
  const EllipseRegion e{{1, 2}, 2.0, 1.0};
  CHECK(std::abs(e.rho() * e.cap_r() - Complex(3.0, 0)) < 1e-14);
  const EllipseRegion v{{0, 0}, 1.0, 2.0};  // vertical
  CHECK(v.vertical());
  CHECK(std::abs(v.rho() * v.cap_r() - Complex(3.0, 0)) < 1e-14);
  CHECK(std::abs(v.rho().imag()) > 0);
}
