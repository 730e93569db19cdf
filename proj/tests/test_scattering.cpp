#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bose/error.hpp"
#include "bose/potential.hpp"
#include "bose/scattering.hpp"

#include <cmath>
#include <numbers>
#include <map>
#include <sstream>

using namespace bose;

namespace {
constexpr double kPi = std::numbers::pi;

const ScatteringSolution& ode(double lambda) {
  static std::map<double, ScatteringSolution> cache;
  auto it = cache.find(lambda);
  if (it == cache.end()) it = cache.emplace(lambda, solve_radial(gaussian_potential(1.0, lambda))).first;
  return it->second;
}
}  // namespace

TEST_CASE("free equation") {
  const ScatteringSolution s = solve_radial(gaussian_potential(1.0, 0.0));
  CHECK(s.a == 0.0);
  CHECK(s.h == 0.0);
  CHECK(s.w_radial.cwiseAbs().maxCoeff() == 0.0);
  CHECK(s.w_hat.tail(s.w_hat.size() - 1).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("gaussian lambda = 0.01 scattering length") {
  const ScatteringSolution& s = ode(0.01);
  // golden values of the ODE route
  CHECK(s.a == doctest::Approx(2.2116579439133e-3).epsilon(1e-10));
  CHECK(s.h == doctest::Approx(1.767619504334e-3).epsilon(1e-8));
  CHECK(s.a < 0.01 * std::sqrt(kPi) / 8.0);
  CHECK(s.a == doctest::Approx(0.01 * std::sqrt(kPi) / 8.0).epsilon(0.01));
  CHECK(s.h > 0.0);
  CHECK(std::abs(s.a - s.a_integral) <= 1e-10 * s.a);
  CHECK(s.g0 == doctest::Approx(8.0 * kPi * s.a).epsilon(1e-9));
}

TEST_CASE("8 pi a < V_hat_0 for admissible potentials") {
  for (double lambda : {0.005, 0.01, 0.02, 0.1, 0.5}) {
    const ScatteringSolution& s = ode(lambda);
    CHECK(8.0 * kPi * s.a < s.v0);
  }
  const ScatteringSolution p = solve_radial(poly_gaussian_potential(0.8, 0.05, {1.0, 0.0, 0.5}));
  CHECK(8.0 * kPi * p.a < p.v0);
  CHECK(p.h > 0.0);
}

TEST_CASE("0 <= w < 1 and w decays like a / r") {
  const ScatteringSolution& s = ode(0.1);
  CHECK(s.w_radial.minCoeff() >= 0.0);
  CHECK(s.w_radial.maxCoeff() < 1.0);
  const Eigen::Index last = s.r_grid.size() - 1;
  CHECK(s.w_radial(last) == doctest::Approx(s.a / s.r_grid(last)).epsilon(1e-8));
}

TEST_CASE("first Born order") {
  const PotentialSpec spec = gaussian_potential(1.0, 0.01);
  const ScatteringSolution b = born_series(spec, born_measure(spec), 1);
  CHECK(b.f_hat.cwiseAbs().maxCoeff() == 0.0);
  CHECK(b.h == 0.0);
  CHECK(8.0 * kPi * b.a == doctest::Approx(b.v0).epsilon(1e-14));
}

TEST_CASE("third Born order agrees with the ODE route") {
  for (double lambda : {0.005, 0.01, 0.02}) {
    const PotentialSpec spec = gaussian_potential(1.0, lambda);
    const ScatteringSolution b = born_series(spec, born_measure(spec), 3);
    CHECK(std::abs(b.a - ode(lambda).a) / ode(lambda).a <= 10.0 * std::pow(lambda, 3));
    CHECK(b.born_terms.size() == 3);
  }
}

TEST_CASE("h is linear in lambda") {
  const double r1 = ode(0.005).h / 0.005;
  const double r2 = ode(0.01).h / 0.01;
  const double r3 = ode(0.02).h / 0.02;
  CHECK(std::abs(r2 / r1 - 1.0) < 0.05);
  CHECK(std::abs(r3 / r1 - 1.0) < 0.05);
}

TEST_CASE("g_hat = 2 p^2 w_hat on the table") {
  for (double lambda : {0.01, 0.1}) {
    const ScatteringSolution& s = ode(lambda);
    double worst = 0.0;
    for (Eigen::Index k = 1; k < s.p_grid.size(); ++k) {
      const double p = s.p_grid(k);
      worst = std::max(worst, std::abs(2.0 * p * p * s.w_hat(k) - s.g_hat(k)) / s.g0);
    }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("w_hat regime bound below delta") {
  const ScatteringSolution& s = ode(0.1);
  const double delta = select_delta(s);
  CHECK(delta > 0.0);
  for (Eigen::Index k = 1; k < s.p_grid.size() && s.p_grid(k) <= delta; ++k) {
    const double p2 = s.p_grid(k) * s.p_grid(k);
    CHECK(s.w_hat(k) >= s.g0 / (4.0 * p2));
    CHECK(s.w_hat(k) <= s.g0 / (2.0 * p2));
  }
}

TEST_CASE("f_hat is Lipschitz with constant of order lambda^2") {
  auto lip = [](const ScatteringSolution& s) {
    double worst = 0.0;
    for (Eigen::Index k = 1; k < s.p_grid.size(); ++k) {
      worst = std::max(worst, std::abs(s.f_hat(k) - s.f_hat(k - 1)) / (s.p_grid(k) - s.p_grid(k - 1)));
    }
    return worst;
  };
  const double c1 = lip(ode(0.01)) / (0.01 * 0.01);
  const double c2 = lip(ode(0.02)) / (0.02 * 0.02);
  CHECK(c1 > 0.0);
  CHECK(std::abs(c2 / c1 - 1.0) < 0.1);
}

TEST_CASE("table access and serialization") {
  const ScatteringSolution& s = ode(0.01);
  CHECK(s.f_hat_at(0.0) == doctest::Approx(s.f0));
  CHECK_THROWS_AS(s.w_hat_at(0.0), DomainError);
  CHECK_THROWS_AS(s.g_hat_at(s.p_max() + 1.0), DomainError);
  std::ostringstream os;
  write_table(os, s, {"note: test"});
  const std::string text = os.str();
  CHECK(text.find("# a: ") != std::string::npos);
  CHECK(text.find("# h: ") != std::string::npos);
  CHECK(text.find("# method: ode") != std::string::npos);
  CHECK(text.find("p,w_hat,f_hat,g_hat") != std::string::npos);
}

TEST_CASE("extraction disagreement is a numeric error") {
  CHECK_THROWS_AS(solve_radial(gaussian_potential(1.0, 0.1), 0.0, 1e-17), NumericError);
}
