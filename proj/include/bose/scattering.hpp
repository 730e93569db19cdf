#pragma once

#include "bose/interpolation.hpp"
#include "bose/lattice.hpp"
#include "bose/ode.hpp"
#include "bose/potential.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <string>
#include <vector>

namespace bose {

/// Zero-energy scattering data: a, the radial profile w(r) and the momentum
/// tables of w_hat, f_hat = V_hat - g_hat and g_hat = 2 p^2 w_hat.
struct ScatteringSolution {
  PotentialTransform potential;
  std::string method;      // "ode" or "born"
  int born_order = 0;      // 0 for the ODE route

  double a = 0.0;
  double h = 0.0;
  double v0 = 0.0;
  double f0 = 0.0;
  double g0 = 0.0;

  // ODE route only
  double kappa = 1.0;          // slope of u(r) = kappa (r - a) outside the support
  double a_integral = 0.0;     // (1/8pi) int V (1 - w)
  double r_max = 0.0;
  double tolerance = 0.0;
  Eigen::VectorXd r_grid;      // log-spaced
  Eigen::VectorXd w_radial;

  // Born route only: |g_hat_0| increments of successive orders
  std::vector<double> born_terms;

  // momentum tables on a uniform grid starting at p = 0 (w_hat(0) = inf)
  Eigen::VectorXd p_grid;
  Eigen::VectorXd w_hat;
  Eigen::VectorXd f_hat;
  Eigen::VectorXd g_hat;

  double v_hat_at(double p) const { return potential(p); }
  double f_hat_at(double p) const { return f_spline_(p); }
  double g_hat_at(double p) const { return g_spline_(p); }
  double w_hat_at(double p) const;  // g_hat / (2 p^2), p > 0
  double p_max() const { return p_grid.size() ? p_grid(p_grid.size() - 1) : 0.0; }

  /// Builds the cubic splines over the f_hat and g_hat columns.
  void finalize_tables();

 private:
  CubicSpline f_spline_;
  CubicSpline g_spline_;
};

struct TableOptions {
  double p_max = 0.0;  // 0: default_p_cut(sigma)
  double dp = 0.0;     // 0: 0.005 * min(sigma, 1)
};

struct RadialOptions {
  double r_max = 0.0;  // 0: 3 * r_support
  double tol = 1e-10;  // allowed relative gap between the asymptote and integral values of a
  OdeOptions ode;
  TableOptions table;
};

/// Integrates u'' = V u / 2 with u(0) = 0, u'(0) = 1 in the variables
/// q = u' and s = r u' - u, which tend to kappa and kappa a outside the
/// support without cancellation. Throws DomainError on a node of u (bound
/// state) and NumericError when the two extractions of a disagree.
ScatteringSolution solve_radial(const PotentialSpec& spec, const RadialOptions& options = {});
ScatteringSolution solve_radial(const PotentialSpec& spec, double r_max, double tol);

struct BornOptions {
  TableOptions table;
  int angular_nodes = 32;
};

/// Default momentum rule for the Born convolutions: uniform panels of width
/// 0.25 * min(sigma, 1) up to the default cutoff.
MomentumMeasure born_measure(const PotentialSpec& spec);

/// g^(1) = V_hat, g^(n+1) = V_hat - V_hat * (g^(n) / 2p^2), truncated at
/// `order` in {1, 2, 3}. The convolution runs over `measure` (continuum or
/// shells); tables are filled by Nystrom interpolation. Throws NumericError
/// when successive increments of g_hat_0 fail to shrink.
ScatteringSolution born_series(const PotentialSpec& spec, const MomentumMeasure& measure, int order,
                               const BornOptions& options = {});

/// h = V_hat_0 / (8 pi a) - 1, checked against f_hat_0 / g_hat_0 to 1e-8 h.
/// Zero coupling and first Born order give h = 0; a negative h throws.
double compute_h(const ScatteringSolution& sol);

/// Largest delta in {0.5, 0.25, 0.1, 0.05, ...} with V_hat, f_hat and g_hat
/// inside [1/2, 1] times their p = 0 values for |p| <= delta.
double select_delta(const ScatteringSolution& sol);

/// Columnar text table p, w_hat, f_hat, g_hat preceded by '#' header lines.
void write_table(std::ostream& os, const ScatteringSolution& sol, const std::vector<std::string>& extra_header = {});

}  // namespace bose
