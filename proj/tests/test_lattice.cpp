#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bose/error.hpp"
#include "bose/lattice.hpp"

#include <cmath>
#include <numbers>

using namespace bose;

namespace {
constexpr double kPi = std::numbers::pi;
const double kGaussIntegral = 1.0 / (8.0 * std::pow(kPi, 1.5));  // int e^{-p^2} d^3p / (2 pi)^3
}

TEST_CASE("unit lattice shells") {
  const LatticeSpec l = enumerate_shells(2.0 * kPi, 1.5);
  REQUIRE(l.shells.size() >= 2);
  CHECK(l.shells[0].norm2 == 1);
  CHECK(l.shells[0].multiplicity == 6);
  CHECK(l.shells[1].norm2 == 2);
  CHECK(l.shells[1].multiplicity == 12);
  CHECK(l.spacing() == doctest::Approx(1.0));
}

TEST_CASE("multiplicities are even and the count matches the ball volume") {
  const LatticeSpec l = enumerate_shells(4.0 * kPi, 6.0);
  CHECK(l.spacing() == doctest::Approx(0.5));
  for (const Shell& s : l.shells) CHECK(s.multiplicity % 2 == 0);
  const double ball = 4.0 * kPi / 3.0 * std::pow(6.0 * 4.0 * kPi / (2.0 * kPi), 3);
  CHECK(static_cast<double>(l.point_count()) == doctest::Approx(ball).epsilon(0.02));
}

TEST_CASE("empty lattice") { CHECK_THROWS_AS(enumerate_shells(2.0 * kPi, 0.5), DomainError); }

TEST_CASE("riemann sums") {
  const LatticeSpec l = enumerate_shells(8.0, 6.0);
  CHECK(riemann_sum([](double) { return 0.0; }, l) == 0.0);
  double prev = INFINITY;
  for (double L : {4.0, 8.0, 16.0}) {
    // the origin is excluded from the shells; add its 1/L^3 back
    const double sum = riemann_sum([](double p2) { return std::exp(-p2); }, enumerate_shells(L, 7.0));
    const double err = std::abs(sum + 1.0 / (L * L * L) - kGaussIntegral);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-14 * kGaussIntegral);
}

TEST_CASE("summation is bit-identical across runs") {
  const LatticeSpec l = enumerate_shells(20.0, 5.0);
  const auto F = [](double p2) { return std::exp(-p2) / (1.0 + p2); };
  CHECK(riemann_sum(F, l) == riemann_sum(F, l));
}

TEST_CASE("richardson removes the declared error terms") {
  const auto f = [](double h) { return 1.0 + 0.3 * std::pow(h, 3) - 2.0 * std::pow(h, 6); };
  const Extrapolation e = richardson({f(0.5), f(0.25), f(0.125)}, 2.0, {3, 6});
  CHECK(e.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS(richardson({1.0, 2.0}, 2.0, {3, 6}));
}

TEST_CASE("riemann limit and its diagnostics") {
  RiemannOptions opt;
  const RiemannLimit r = riemann_limit([](double p2) { return std::exp(-p2); }, 6.0, 7.0, opt);
  CHECK(r.box_sides.size() == 3);
  CHECK_FALSE(r.diverging);
  CHECK(std::abs(r.extrapolated.value - kGaussIntegral) < std::abs(r.value - kGaussIntegral));
  const RiemannLimit d = riemann_limit([](double p2) { return 1.0 / (p2 * p2); }, 6.0, 4.0, opt);
  CHECK(d.diverging);
  opt.tail_estimate = 1e-6;
  CHECK_THROWS_AS(riemann_limit([](double p2) { return std::exp(-p2); }, 6.0, 7.0, opt), NumericError);
}

TEST_CASE("continuum and hybrid measures integrate the Gaussian") {
  const MomentumMeasure c = continuum_measure(1e-3, 1.0, 8.0);
  CHECK_FALSE(c.finite());
  CHECK(c.integrate(c.nodes.array().square().exp().inverse().matrix()) ==
        doctest::Approx(kGaussIntegral).epsilon(1e-13));
  const MomentumMeasure h = hybrid_measure(200.0, 1.0, 8.0);
  CHECK(h.finite());
  CHECK(h.volume == doctest::Approx(200.0 * 200.0 * 200.0));
  CHECK(h.integrate(h.nodes.array().square().exp().inverse().matrix()) + 1.0 / h.volume ==
        doctest::Approx(kGaussIntegral).epsilon(1e-10));
  const MomentumMeasure s = shell_measure(enumerate_shells(2.0 * kPi, 1.5));
  CHECK(s.weights(0) == doctest::Approx(6.0 / std::pow(2.0 * kPi, 3)));
}
