#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bose/error.hpp"
#include "bose/potential.hpp"

#include <cmath>
#include <numbers>

using namespace bose;

namespace {
const double kPi32 = std::pow(std::numbers::pi, 1.5);
}

TEST_CASE("position space values") {
  CHECK(evaluate_position(gaussian_potential(1.0, 0.0), 0.7) == 0.0);
  const PotentialSpec g = gaussian_potential(1.0, 0.01);
  CHECK(evaluate_position(g, 0.0) == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(evaluate_position(g, 1.0) == doctest::Approx(3.6787944117144e-3).epsilon(1e-12));
  CHECK_THROWS_AS(evaluate_position(g, -0.1), DomainError);
}

TEST_CASE("support radius") {
  const PotentialSpec g = gaussian_potential(2.0, 0.3);
  CHECK(g.r_support == doctest::Approx(2.0 * std::sqrt(std::log(1e18))).epsilon(1e-6));
  CHECK(evaluate_position(g, g.r_support) <= 1.0001e-18 * 0.3);
  const PotentialSpec p = poly_gaussian_potential(1.0, 0.1, {1.0, 0.0, 2.0});
  CHECK(evaluate_position(p, p.r_support) <= 1.0001e-18 * 0.1 * 2.0);
}

TEST_CASE("continuum transform") {
  const PotentialSpec zero = gaussian_potential(1.0, 0.0);
  CHECK(fourier_continuum(zero, 0.0) == 0.0);
  CHECK(fourier_continuum(zero, 3.0) == 0.0);
  const PotentialSpec g = gaussian_potential(1.0, 0.01);
  CHECK(fourier_continuum(g, 0.0) == doctest::Approx(0.01 * kPi32).epsilon(1e-12));
  CHECK(fourier_continuum(g, 0.0) == doctest::Approx(5.5683e-2).epsilon(1e-4));
  for (double p : {0.1, 1.0, 2.5, 6.0}) {
    const double exact = 0.01 * kPi32 * std::exp(-p * p / 4.0);
    CHECK(fourier_continuum(g, p) == doctest::Approx(exact).epsilon(1e-9));
  }
}

TEST_CASE("transform decays faster than any power") {
  const PotentialSpec g = gaussian_potential(1.0, 1.0);
  double prev = INFINITY;
  for (double p = 6.0; p <= 12.0; p += 1.0) {
    const double scaled = std::pow(p, 8) * std::abs(fourier_continuum(g, p));
    CHECK(scaled < prev);
    prev = scaled;
  }
  const PotentialTransform t(g);
  CHECK(t(8.0) / t.at_zero() < 1e-6);
}

TEST_CASE("tabulated transform matches quadrature") {
  const PotentialSpec p = poly_gaussian_potential(1.0, 0.1, {1.0, 0.5, 0.25});
  const PotentialTransform t(p, 20.0);
  for (double q : {0.0, 0.013, 0.7, 3.3, 9.1, 19.5}) {
    CHECK(t(q) == doctest::Approx(fourier_continuum(p, q)).epsilon(1e-9).scale(t.at_zero()));
  }
  const PotentialTransform gt(gaussian_potential(1.5, 0.2));
  CHECK(gt(1.2) == doctest::Approx(fourier_continuum(gaussian_potential(1.5, 0.2), 1.2)).epsilon(1e-10));
}

TEST_CASE("lipschitz bound holds on a grid") {
  const PotentialSpec p = poly_gaussian_potential(1.0, 0.05, {1.0, 1.0});
  const double bound = lipschitz_bound(p);
  const PotentialTransform t(p, 12.0);
  for (double q = 0.0; q < 10.0; q += 0.1) {
    CHECK(std::abs(t(q + 0.1) - t(q)) <= bound * 0.1 * (1.0 + 1e-9));
  }
}

TEST_CASE("periodization defect shrinks with the box") {
  const PotentialSpec g = gaussian_potential(1.0, 0.1);
  CHECK(periodization_defect(g, 3.0) > periodization_defect(g, 5.0));
  CHECK(periodization_defect(g, 10.0) < 1e-40);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(gaussian_potential(1.0, -0.1), DomainError);
  CHECK_THROWS_AS(gaussian_potential(0.0, 0.1), DomainError);
  CHECK_THROWS_AS(poly_gaussian_potential(1.0, 0.1, {1.0, -0.5}), DomainError);
  CHECK_THROWS_AS(poly_gaussian_potential(1.0, 0.1, {0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(profile_family_from_string("yukawa"), ConfigError);
  CHECK(profile_family_from_string(to_string(ProfileFamily::poly_gaussian)) == ProfileFamily::poly_gaussian);
}
