#include "fdecay/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using fdecay::integrate_adaptive;

TEST_CASE("integrate_adaptive on smooth integrands") {
  CHECK(std::abs(integrate_adaptive([](double t) { return t * t; }, 0, 1, 1e-12) - 1.0 / 3.0) <
        1e-12);
  CHECK(std::abs(integrate_adaptive([](double t) { return std::exp(t); }, 0, 1, 1e-12) -
                 (std::exp(1.0) - 1.0)) < 1e-12);
}

TEST_CASE("integrate_adaptive near a singularity") {
  const double got = integrate_adaptive([](double t) { return 1.0 / (1.0 - t); }, 0, 0.99, 1e-10);
  CHECK(std::abs(got - (-std::log(0.01))) < 1e-8);
}

TEST_CASE("integrate_adaptive reports exhausted subdivision") {
  CHECK_THROWS_AS(integrate_adaptive([](double t) { return 1.0 / (1.0 - t); }, 0, 0.999999, 1e-14,
                                     4),
                  std::runtime_error);
}

TEST_CASE("integrate_adaptive argument checks") {
  CHECK_THROWS_AS(integrate_adaptive([](double) { return 0.0; }, 1, 0, 1e-10),
                  std::invalid_argument);
  CHECK_THROWS_AS(integrate_adaptive([](double) { return 0.0; }, 0, 1, 0.0),
                  std::invalid_argument);
}
