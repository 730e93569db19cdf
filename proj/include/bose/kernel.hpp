#pragma once

#include "bose/potential.hpp"

#include <Eigen/Dense>

namespace bose {

/// Angular average K(p, r) = 1/2 int_{-1}^{1} V_hat(sqrt(p^2 + r^2 - 2 p r t)) dt,
/// the radial kernel of the convolution sum_r V_hat_{p-r} F(|r|). Closed form
/// for the Gaussian family, Gauss-Legendre in t otherwise.
class PairKernel {
 public:
  explicit PairKernel(const PotentialTransform& transform, int angular_nodes = 32);

  double operator()(double p, double r) const;

  /// Y(i, k) = sum_j K(rows(i), cols(j)) * X(j, k). Rows run in parallel and
  /// each row is reduced pairwise in a fixed order.
  Eigen::MatrixXd apply(const Eigen::VectorXd& rows, const Eigen::VectorXd& cols, const Eigen::MatrixXd& X) const;

  const PotentialTransform& transform() const { return transform_; }

 private:
  PotentialTransform transform_;
  int angular_nodes_;
  bool closed_form_;
  double sigma2_ = 0.0;
};

}  // namespace bose
