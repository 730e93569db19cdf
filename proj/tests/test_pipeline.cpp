#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bose/asymptotics.hpp"
#include "bose/error.hpp"
#include "bose/pipeline.hpp"
#include "bose/potential.hpp"

#include <cmath>
#include <numbers>

using namespace bose;

namespace {
const ScatteringSolution& scat01() {
  static const ScatteringSolution s = solve_radial(gaussian_potential(1.0, 0.1));
  return s;
}
}  // namespace

TEST_CASE("kappa of the Lee-Huang-Yang energy") {
  for (double rho : {1e-3, 1e-6, 1e-9}) {
    const double a = 0.3;
    CHECK(kappa_of(lhy_prediction(rho, a), rho, a) == doctest::Approx(lhy_coefficient()).epsilon(1e-7));
  }
}

TEST_CASE("kappa fit recovers synthetic coefficients") {
  std::vector<double> rho, kappa;
  for (double r = 1e-7; r < 2e-4; r *= 2.0) {
    rho.push_back(r);
    kappa.push_back(4.9 + 3.0 * std::sqrt(r) - 0.7 * std::sqrt(r) * std::log(r));
  }
  const KappaFit f = fit_kappa(rho, kappa);
  CHECK(f.kappa0 == doctest::Approx(4.9).epsilon(1e-10));
  CHECK(f.b == doctest::Approx(3.0).epsilon(1e-7));
  CHECK(f.c == doctest::Approx(-0.7).epsilon(1e-7));
  CHECK(f.rms < 1e-12);
  CHECK_THROWS_AS(fit_kappa({1e-5, 1e-4}, {1.0, 2.0}), ConfigError);
}

TEST_CASE("log-log slope") {
  std::vector<double> x, y;
  for (double v = 1e-3; v < 1.0; v *= 3.0) {
    x.push_back(v);
    y.push_back(2.5 * std::pow(v, 1.5));
  }
  CHECK(loglog_slope(x, y) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("box sequence and extrapolation") {
  const double rho = 1e-4;
  const EnergyLimit lim = energy_limit(scat01(), rho);
  REQUIRE(lim.boxes.size() == 3);
  CHECK(lim.boxes[0].L == doctest::Approx(default_box_side(scat01(), rho)).epsilon(1e-15));
  CHECK(lim.boxes[1].L == doctest::Approx(2.0 * lim.boxes[0].L).epsilon(1e-15));
  CHECK(lim.boxes[2].L == doctest::Approx(4.0 * lim.boxes[0].L).epsilon(1e-15));
  const double a = scat01().a;
  const double leading = 4.0 * std::numbers::pi * rho * a;
  CHECK(lim.per_particle.value / leading == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(lim.per_particle.error_estimate < 1e-3 * (lim.per_particle.value - leading));
  CHECK(lim.kappa == doctest::Approx(kappa_of(lim.per_particle.value, rho, a)).epsilon(1e-15));
  CHECK(lim.kappa == doctest::Approx(std::sqrt(32.0 / std::numbers::pi) * phi(scat01().h).value).epsilon(0.05));
  CHECK(lim.depletion.value > 0.0);
  CHECK(lim.depletion.value < 1e-3);

  EnergyOptions bad;
  bad.orders = {3};
  CHECK_THROWS_AS(energy_limit(scat01(), rho, bad), ConfigError);
}

TEST_CASE("energy point on a fixed box") {
  const double rho = 1e-4;
  const EnergyPoint p = energy_point(scat01(), rho, 400.0);
  CHECK(p.L == 400.0);
  CHECK(p.nodes > 0);
  CHECK(p.energy.rho == rho);
  CHECK(p.energy.volume == doctest::Approx(400.0 * 400.0 * 400.0));
  CHECK(p.energy.channel("hartree") == doctest::Approx(0.5 * rho * rho * scat01().v0).epsilon(1e-12));
  CHECK(p.depletion > 0.0);
  CHECK(p.depletion < 1e-3);
  CHECK_THROWS_AS(p.energy.channel("no_such_channel"), ConfigError);
}

TEST_CASE("density outside the dilute regime") {
  CHECK_THROWS_AS(energy_limit(scat01(), 10.0), DomainError);
}
