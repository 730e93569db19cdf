#include "bose/scattering.hpp"

#include "bose/error.hpp"
#include "bose/kernel.hpp"
#include "bose/parallel.hpp"
#include "bose/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

namespace bose {
namespace {

constexpr double kPi = std::numbers::pi;

Eigen::VectorXd table_grid(const PotentialSpec& spec, const TableOptions& t) {
  const double p_max = t.p_max > 0.0 ? t.p_max : default_p_cut(spec.sigma);
  const double dp = t.dp > 0.0 ? t.dp : 0.005 * std::min(spec.sigma, 1.0);
  const auto n = static_cast<Eigen::Index>(std::ceil(p_max / dp - 1e-9)) + 1;
  return Eigen::VectorXd::LinSpaced(n, 0.0, dp * static_cast<double>(n - 1));
}

PotentialTransform make_transform(const PotentialSpec& spec, const Eigen::VectorXd& grid) {
  // convolution kernels need V_hat up to twice the table range
  return PotentialTransform(spec, std::max(40.0, 2.0 * grid(grid.size() - 1) + 1.0));
}

}  // namespace

double ScatteringSolution::w_hat_at(double p) const {
  if (!(p > 0.0)) throw DomainError("w_hat_at: |p| must be > 0");
  return g_hat_at(p) / (2.0 * p * p);
}

void ScatteringSolution::finalize_tables() {
  const Eigen::Index n = p_grid.size();
  const double dp = p_grid(n - 1) - p_grid(n - 2);
  f_spline_ = CubicSpline(p_grid, f_hat, 0.0, (f_hat(n - 1) - f_hat(n - 2)) / dp);
  g_spline_ = CubicSpline(p_grid, g_hat, 0.0, (g_hat(n - 1) - g_hat(n - 2)) / dp);
}

ScatteringSolution solve_radial(const PotentialSpec& spec, double r_max, double tol) {
  RadialOptions options;
  options.r_max = r_max;
  options.tol = tol;
  return solve_radial(spec, options);
}

ScatteringSolution solve_radial(const PotentialSpec& spec, const RadialOptions& options) {
  validate(spec);
  if (!(options.tol > 0.0)) throw DomainError("solve_radial: tol must be > 0");
  const double rs = spec.r_support;
  const double R = options.r_max > 0.0 ? options.r_max : 3.0 * rs;
  if (!(R >= 1.5 * rs)) throw DomainError("solve_radial: r_max must be well beyond r_support");

  ScatteringSolution sol;
  sol.method = "ode";
  sol.r_max = R;
  sol.tolerance = options.tol;
  sol.p_grid = table_grid(spec, options.table);
  sol.potential = make_transform(spec, sol.p_grid);

  // radial quadrature nodes on the support, fit points, log grid
  std::vector<double> edges;
  const int panels = static_cast<int>(std::ceil(rs / (0.05 * spec.sigma)));
  for (int k = 0; k <= panels; ++k) edges.push_back(rs * k / panels);
  const QuadratureRule radial = composite_gauss_legendre(edges, 16);
  const int n_fit = 33;
  const int n_log = 200;
  std::vector<std::pair<double, int>> outputs;  // (r, slot)
  const auto n_rad = static_cast<int>(radial.nodes.size());
  for (int i = 0; i < n_rad; ++i) outputs.emplace_back(radial.nodes(i), i);
  for (int i = 0; i < n_fit; ++i) outputs.emplace_back(0.8 * R + 0.2 * R * i / (n_fit - 1), n_rad + i);
  const double r_lo = 1e-3 * spec.sigma;
  for (int i = 0; i < n_log; ++i)
    outputs.emplace_back(r_lo * std::pow(R / r_lo, double(i) / (n_log - 1)), n_rad + n_fit + i);
  std::sort(outputs.begin(), outputs.end());
  std::vector<double> abscissae(outputs.size());
  for (std::size_t k = 0; k < outputs.size(); ++k) abscissae[k] = outputs[k].first;

  const OdeRhs rhs = [&](double r, const Eigen::VectorXd& y) {
    const double half_v = 0.5 * evaluate_position(spec, r);
    const double u = r * y(0) - y(1);
    Eigen::VectorXd d(2);
    d << half_v * u, half_v * r * u;
    return d;
  };
  const auto states = integrate_dopri5(rhs, Eigen::Vector2d(1.0, 0.0), 0.0, abscissae, options.ode);
  std::vector<Eigen::Vector2d> at(outputs.size());
  for (std::size_t k = 0; k < outputs.size(); ++k) {
    const double r = outputs[k].first;
    const Eigen::Vector2d y = states[k];
    if (!(r * y(0) - y(1) > 0.0)) {
      std::ostringstream msg;
      msg << "solve_radial: u(r) vanishes near r = " << r << " (bound state); use a smaller lambda";
      throw DomainError(msg.str());
    }
    at[static_cast<std::size_t>(outputs[k].second)] = y;
  }

  // least-squares line u = kappa r + beta over [0.8 R, R]
  Eigen::MatrixXd A(n_fit, 2);
  Eigen::VectorXd b(n_fit);
  for (int i = 0; i < n_fit; ++i) {
    const double r = 0.8 * R + 0.2 * R * i / (n_fit - 1);
    const Eigen::Vector2d& y = at[static_cast<std::size_t>(n_rad + i)];
    A(i, 0) = r;
    A(i, 1) = 1.0;
    b(i) = r * y(0) - y(1);
  }
  const Eigen::Vector2d line = A.colPivHouseholderQr().solve(b);
  // free equation: u = r exactly, the fit only adds rounding
  const bool free = spec.lambda == 0.0;
  const double kappa = free ? 1.0 : line(0);
  sol.kappa = kappa;
  sol.a = free ? 0.0 : -line(1) / kappa;

  Eigen::VectorXd r = radial.nodes;
  Eigen::VectorXd w(n_rad), v(n_rad), rvu(n_rad);
  for (int i = 0; i < n_rad; ++i) {
    const Eigen::Vector2d& y = at[static_cast<std::size_t>(i)];
    w(i) = (r(i) * (kappa - y(0)) + y(1)) / (kappa * r(i));
    v(i) = evaluate_position(spec, r(i));
    rvu(i) = r(i) * v(i) * (r(i) * y(0) - y(1));
  }
  sol.a_integral = pairwise_sum(Eigen::VectorXd(radial.weights.cwiseProduct(rvu))) / (2.0 * kappa);
  const double gap = std::abs(sol.a - sol.a_integral);
  if (spec.lambda > 0.0 && gap > options.tol * std::abs(sol.a)) {
    std::ostringstream msg;
    msg << "solve_radial: asymptote a = " << sol.a << " and integral a = " << sol.a_integral
        << " disagree beyond tol " << options.tol;
    throw NumericError(msg.str(), gap / std::max(std::abs(sol.a), std::numeric_limits<double>::min()));
  }

  sol.r_grid.resize(n_log);
  sol.w_radial.resize(n_log);
  for (int i = 0; i < n_log; ++i) {
    const Eigen::Vector2d& y = at[static_cast<std::size_t>(n_rad + n_fit + i)];
    const double rr = r_lo * std::pow(R / r_lo, double(i) / (n_log - 1));
    sol.r_grid(i) = rr;
    sol.w_radial(i) = (rr * (kappa - y(0)) + y(1)) / (kappa * rr);
  }

  const Eigen::Index n = sol.p_grid.size();
  sol.f_hat.resize(n);
  sol.g_hat.resize(n);
  sol.w_hat.resize(n);
  const Eigen::VectorXd fw = radial.weights.cwiseProduct(r.cwiseAbs2()).cwiseProduct(v).cwiseProduct(w);
  const Eigen::VectorXd ww = radial.weights.cwiseProduct(r).cwiseProduct(w);
  const double a = sol.a;
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t kk) {
    const auto k = static_cast<Eigen::Index>(kk);
    const double p = sol.p_grid(k);
    Eigen::VectorXd terms(n_rad);
    for (int i = 0; i < n_rad; ++i) terms(i) = fw(i) * sinc(p * r(i));
    const double f = 4.0 * kPi * pairwise_sum(terms);
    sol.f_hat(k) = f;
    sol.g_hat(k) = sol.potential(p) - f;
    if (p == 0.0) {
      sol.w_hat(k) = std::numeric_limits<double>::infinity();
      return;
    }
    // w = a / r beyond the support contributes 4 pi a cos(p rs) / p^2
    for (int i = 0; i < n_rad; ++i) terms(i) = ww(i) * std::sin(p * r(i));
    sol.w_hat(k) = 4.0 * kPi / p * pairwise_sum(terms) + 4.0 * kPi * a * std::cos(p * rs) / (p * p);
  });
  sol.v0 = sol.potential.at_zero();
  sol.f0 = sol.f_hat(0);
  sol.g0 = sol.g_hat(0);
  sol.finalize_tables();
  sol.h = compute_h(sol);
  return sol;
}

MomentumMeasure born_measure(const PotentialSpec& spec) {
  const double panel = 0.25 * std::min(spec.sigma, 1.0);
  return continuum_measure(panel, panel, default_p_cut(spec.sigma), panel, 16);
}

ScatteringSolution born_series(const PotentialSpec& spec, const MomentumMeasure& measure, int order,
                               const BornOptions& options) {
  validate(spec);
  if (order < 1 || order > 3) throw DomainError("born_series: order must be 1, 2 or 3");
  ScatteringSolution sol;
  sol.method = "born";
  sol.born_order = order;
  sol.p_grid = table_grid(spec, options.table);
  sol.potential = make_transform(spec, sol.p_grid);
  const PairKernel kernel(sol.potential, options.angular_nodes);

  const Eigen::VectorXd& P = measure.nodes;
  const Eigen::Index m = P.size();
  const Eigen::Index n = sol.p_grid.size();
  if ((P.array() <= 0.0).any()) throw DomainError("born_series: measure nodes must be nonzero momenta");
  Eigen::VectorXd v_nodes(m), v_table(n);
  for (Eigen::Index j = 0; j < m; ++j) v_nodes(j) = sol.potential(P(j));
  for (Eigen::Index k = 0; k < n; ++k) v_table(k) = sol.potential(sol.p_grid(k));

  Eigen::VectorXd g_nodes = v_nodes;
  Eigen::VectorXd g_table = v_table;
  sol.born_terms.push_back(std::abs(g_table(0)));
  for (int k = 2; k <= order; ++k) {
    // X_j = W_j w_hat(P_j) with w_hat = g_hat / 2p^2
    Eigen::MatrixXd X = measure.weights.cwiseProduct(g_nodes).cwiseQuotient(2.0 * P.cwiseAbs2());
    const Eigen::VectorXd next_table = v_table - kernel.apply(sol.p_grid, P, X).col(0);
    if (k < order) g_nodes = v_nodes - kernel.apply(P, P, X).col(0);
    const double term = std::abs(next_table(0) - g_table(0));
    if (spec.lambda > 0.0 && term >= sol.born_terms.back()) {
      std::ostringstream msg;
      msg << "born_series: order " << k << " increment " << term << " does not shrink (previous "
          << sol.born_terms.back() << "); reduce lambda";
      throw NumericError(msg.str(), term);
    }
    sol.born_terms.push_back(term);
    g_table = next_table;
  }

  sol.g_hat = g_table;
  sol.f_hat = v_table - g_table;
  sol.w_hat.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double p = sol.p_grid(k);
    sol.w_hat(k) = p == 0.0 ? std::numeric_limits<double>::infinity() : g_table(k) / (2.0 * p * p);
  }
  sol.v0 = sol.potential.at_zero();
  sol.f0 = sol.f_hat(0);
  sol.g0 = sol.g_hat(0);
  sol.a = sol.g0 / (8.0 * kPi);
  sol.a_integral = sol.a;
  sol.finalize_tables();
  sol.h = compute_h(sol);
  return sol;
}

double compute_h(const ScatteringSolution& sol) {
  if (sol.v0 == 0.0) return 0.0;
  if (!(sol.a > 0.0)) throw NumericError("compute_h: scattering length must be positive", sol.a);
  const double h = sol.v0 / (8.0 * kPi * sol.a) - 1.0;
  const double ratio = sol.f0 / sol.g0;
  const double gap = std::abs(h - ratio);
  if (gap > 1e-8 * std::abs(h) + 1e-14) {
    std::ostringstream msg;
    msg << "compute_h: V0/(8 pi a) - 1 = " << h << " differs from f0/g0 = " << ratio;
    throw NumericError(msg.str(), gap);
  }
  if (h < -1e-14) {
    std::ostringstream msg;
    msg << "compute_h: h = " << h << " < 0 contradicts 8 pi a < V_hat_0";
    throw NumericError(msg.str(), h);
  }
  // f0 = 0 exactly (first Born order): h vanishes without rounding residue
  return sol.f0 == 0.0 ? 0.0 : std::max(h, 0.0);
}

double select_delta(const ScatteringSolution& sol) {
  auto inside = [](double value, double ref) {
    const double slack = 1e-12 * std::abs(ref);
    return value >= 0.5 * ref - slack && value <= ref + slack;
  };
  for (double decade = 1.0; decade > 1e-6; decade *= 0.1) {
    for (double base : {0.5, 0.25, 0.1}) {
      const double delta = base * decade;
      bool ok = true;
      for (Eigen::Index k = 0; k < sol.p_grid.size() && sol.p_grid(k) <= delta; ++k) {
        const double p = sol.p_grid(k);
        ok = ok && inside(sol.potential(p), sol.v0) && inside(sol.f_hat(k), sol.f0) && inside(sol.g_hat(k), sol.g0);
      }
      if (ok) return delta;
    }
  }
  throw NumericError("select_delta: no admissible delta above 1e-6");
}

void write_table(std::ostream& os, const ScatteringSolution& sol, const std::vector<std::string>& extra_header) {
  os << std::setprecision(17);
  for (const auto& line : extra_header) os << "# " << line << '\n';
  os << "# method: " << sol.method;
  if (sol.method == "born") os << '(' << sol.born_order << ')';
  os << '\n'
     << "# a: " << sol.a << '\n'
     << "# h: " << sol.h << '\n'
     << "# v_hat_0: " << sol.v0 << '\n'
     << "# f_hat_0: " << sol.f0 << '\n'
     << "# g_hat_0: " << sol.g0 << '\n';
  if (sol.method == "ode") os << "# a_integral: " << sol.a_integral << '\n' << "# tolerance: " << sol.tolerance << '\n';
  os << "p,w_hat,f_hat,g_hat\n";
  for (Eigen::Index k = 1; k < sol.p_grid.size(); ++k)
    os << sol.p_grid(k) << ',' << sol.w_hat(k) << ',' << sol.f_hat(k) << ',' << sol.g_hat(k) << '\n';
}

}  // namespace bose
