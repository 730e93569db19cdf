#include "bose/pipeline.hpp"

#include "bose/asymptotics.hpp"
#include "bose/error.hpp"
#include "bose/parallel.hpp"
#include "bose/potential.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

namespace bose {

double default_box_side(const ScatteringSolution& scat, double rho, double box_factor) {
  if (!(rho > 0.0)) throw DomainError("default_box_side: rho must be > 0");
  if (!(scat.v0 > 0.0)) throw DomainError("default_box_side: potential vanishes, no healing length");
  return 2.0 * std::numbers::pi * box_factor / std::sqrt(rho * scat.v0);
}

EnergyPoint energy_point(const ScatteringSolution& scat, double rho, double L, const EnergyOptions& options) {
  const double p_cut = options.p_cut > 0.0 ? options.p_cut : scat.p_max();
  const MomentumMeasure mu = hybrid_measure(L, options.p_mid, p_cut, options.shell_radius);
  const VariationalState st = build_state(scat, rho, mu);
  EnergyPoint pt;
  pt.rho = rho;
  pt.L = L;
  pt.nodes = static_cast<long>(mu.size());
  pt.energy = energy_full(st, scat);
  pt.depletion = st.depletion();
  return pt;
}

EnergyLimit energy_limit(const ScatteringSolution& scat, double rho, const EnergyOptions& options) {
  if (static_cast<int>(options.orders.size()) != options.refinements) {
    throw ConfigError("energy_limit: need one Richardson order per refinement");
  }
  const double L0 = options.box_side > 0.0 ? options.box_side : default_box_side(scat, rho, options.box_factor);
  EnergyLimit out;
  out.rho = rho;
  std::vector<double> e, d;
  for (int k = 0; k <= options.refinements; ++k) {
    out.boxes.push_back(energy_point(scat, rho, L0 * std::ldexp(1.0, k), options));
    e.push_back(out.boxes.back().energy.per_particle);
    d.push_back(out.boxes.back().depletion);
  }
  out.per_particle = richardson(e, 2.0, options.orders);
  out.depletion = richardson(d, 2.0, options.orders);
  out.kappa = kappa_of(out.per_particle.value, rho, scat.a);
  return out;
}

double kappa_of(double per_particle, double rho, double a) {
  if (!(rho > 0.0 && a > 0.0)) throw DomainError("kappa_of: rho and a must be > 0");
  const double lead = 4.0 * std::numbers::pi * rho * a;
  return (per_particle - lead) / (lead * std::sqrt(rho * a * a * a));
}

KappaFit fit_kappa(const std::vector<double>& rho, const std::vector<double>& kappa) {
  if (rho.size() != kappa.size() || rho.size() < 3) throw ConfigError("fit_kappa: need >= 3 matching points");
  const auto n = static_cast<Eigen::Index>(rho.size());
  Eigen::MatrixXd A(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = rho[static_cast<std::size_t>(i)];
    if (!(r > 0.0)) throw DomainError("fit_kappa: rho must be > 0");
    A(i, 0) = 1.0;
    A(i, 1) = std::sqrt(r);
    A(i, 2) = std::sqrt(r) * std::log(r);
    y(i) = kappa[static_cast<std::size_t>(i)];
  }
  const Eigen::Vector3d x = A.colPivHouseholderQr().solve(y);
  KappaFit fit{x(0), x(1), x(2), 0.0};
  fit.rms = std::sqrt((A * x - y).squaredNorm() / static_cast<double>(n));
  return fit;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ConfigError("loglog_slope: need >= 2 matching points");
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd A(n, 2);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double xi = x[static_cast<std::size_t>(i)];
    const double yi = y[static_cast<std::size_t>(i)];
    if (!(xi > 0.0 && yi > 0.0)) throw DomainError("loglog_slope: values must be > 0");
    A(i, 0) = 1.0;
    A(i, 1) = std::log(xi);
    b(i) = std::log(yi);
  }
  return A.colPivHouseholderQr().solve(b)(1);
}

LhyCheck lhy_check(const ScatteringSolution& scat, const std::vector<double>& rho, double tolerance,
                   const EnergyOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  if (rho.size() < 3) throw ConfigError("lhy_check: need at least three densities");
  for (std::size_t i = 1; i < rho.size(); ++i) {
    if (!(rho[i] > rho[i - 1])) throw ConfigError("lhy_check: rho sweep must be strictly increasing");
  }
  if (!(scat.a > 0.0)) throw DomainError("lhy_check: scattering length must be > 0");
  LhyCheck out;
  out.lambda = scat.potential.spec().lambda;
  out.a = scat.a;
  out.h = scat.h;
  out.phi = phi(scat.h).value;
  out.target = std::sqrt(32.0 / std::numbers::pi) * out.phi;
  out.rho = rho;
  out.points.resize(rho.size());
  parallel_for(rho.size(), [&](std::size_t i) { out.points[i] = energy_limit(scat, rho[i], options); });

  std::vector<double> depl;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double r = rho[i];
    out.kappa.push_back(out.points[i].kappa);
    const double lead = 4.0 * std::numbers::pi * r * scat.a;
    const double resid = out.points[i].per_particle.value / lead - 1.0 - out.target * std::sqrt(r * std::pow(scat.a, 3));
    out.residual_ratio.push_back(resid / (r * std::abs(std::log(r))));
    depl.push_back(out.points[i].depletion.value);
  }
  out.fit = fit_kappa(rho, out.kappa);
  out.ratio = out.fit.kappa0 / out.target;
  out.depletion_exponent = loglog_slope(rho, depl);
  // bounded: no growth toward small rho beyond the spread at the largest densities
  double big = 0.0;
  for (std::size_t i = rho.size() / 2; i < rho.size(); ++i) big = std::max(big, std::abs(out.residual_ratio[i]));
  out.residual_bounded = true;
  for (double r : out.residual_ratio) out.residual_bounded = out.residual_bounded && std::abs(r) <= 4.0 * big;
  out.pass = std::abs(out.ratio - 1.0) <= tolerance;
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

DepletionScan depletion_vs_lambda(double sigma, const std::vector<double>& lambdas, double rho,
                                  const EnergyOptions& options) {
  DepletionScan out;
  out.lambda = lambdas;
  out.depletion.resize(lambdas.size());
  out.a.resize(lambdas.size());
  parallel_for(lambdas.size(), [&](std::size_t i) {
    const ScatteringSolution scat = solve_radial(gaussian_potential(sigma, lambdas[i]));
    out.a[i] = scat.a;
    out.depletion[i] = energy_limit(scat, rho, options).depletion.value;
  });
  out.exponent = loglog_slope(lambdas, out.depletion);
  return out;
}

}  // namespace bose
