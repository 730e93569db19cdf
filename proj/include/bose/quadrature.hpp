#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace bose {

/// Nodes and weights of a one-dimensional quadrature rule.
struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// n-point Gauss-Legendre rule on [-1, 1]. Rules are computed once by Newton
/// iteration on P_n and cached.
const QuadratureRule& gauss_legendre(int n);

/// n-point Gauss-Legendre rule mapped to [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

/// Composite Gauss-Legendre rule with `n` nodes per panel over the panel
/// edges `edges` (must be increasing).
QuadratureRule composite_gauss_legendre(std::span<const double> edges, int n);

struct Integral {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

/// Adaptive Gauss-Kronrod (7/15) integration on [a, b]. The interval with
/// the largest error estimate is bisected until the total estimate is below
/// max(abs_tol, rel_tol * |value|). Throws NumericError carrying the
/// achieved estimate when `max_intervals` is exhausted.
Integral integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                            double abs_tol = 1e-12, double rel_tol = 1e-10,
                            int max_intervals = 4000);

/// Adaptive integration over consecutive breakpoints; errors add up.
Integral integrate_adaptive(const std::function<double(double)>& f, std::span<const double> breakpoints,
                            double abs_tol = 1e-12, double rel_tol = 1e-10,
                            int max_intervals = 4000);

/// Pairwise (cascade) summation. The reduction tree depends only on the
/// length of the input, so results are bit-identical across runs.
double pairwise_sum(std::span<const double> values);

inline double pairwise_sum(const Eigen::VectorXd& values) {
  return pairwise_sum(std::span<const double>(values.data(), static_cast<std::size_t>(values.size())));
}

/// sin(x)/x with the removable singularity filled in.
template <typename Scalar>
Scalar sinc(Scalar x) {
  using std::abs;
  using std::sin;
  if (abs(x) < Scalar(1e-4)) {
    const Scalar x2 = x * x;
    return Scalar(1) - x2 / Scalar(6) + x2 * x2 / Scalar(120);
  }
  return sin(x) / x;
}

}  // namespace bose
