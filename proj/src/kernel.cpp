#include "bose/kernel.hpp"

#include "bose/error.hpp"
#include "bose/parallel.hpp"
#include "bose/quadrature.hpp"

#include <cmath>
#include <vector>

namespace bose {

PairKernel::PairKernel(const PotentialTransform& transform, int angular_nodes)
    : transform_(transform), angular_nodes_(angular_nodes) {
  if (angular_nodes < 2) throw DomainError("PairKernel: need at least two angular nodes");
  closed_form_ = transform.spec().family == ProfileFamily::gaussian;
  sigma2_ = transform.spec().sigma * transform.spec().sigma;
}

double PairKernel::operator()(double p, double r) const {
  if (closed_form_) {
    const double d = p - r;
    const double z = p * r * sigma2_;
    const double shape = z < 1e-8 ? 1.0 - 0.5 * z : -std::expm1(-z) / z;
    return transform_.at_zero() * std::exp(-0.25 * d * d * sigma2_) * shape;
  }
  const QuadratureRule& rule = gauss_legendre(angular_nodes_);
  double sum = 0.0;
  for (Eigen::Index k = 0; k < rule.nodes.size(); ++k) {
    const double q2 = p * p + r * r - 2.0 * p * r * rule.nodes(k);
    sum += rule.weights(k) * transform_(std::sqrt(std::max(q2, 0.0)));
  }
  return 0.5 * sum;
}

Eigen::MatrixXd PairKernel::apply(const Eigen::VectorXd& rows, const Eigen::VectorXd& cols,
                                  const Eigen::MatrixXd& X) const {
  if (X.rows() != cols.size()) throw DomainError("PairKernel::apply: size mismatch");
  Eigen::MatrixXd Y(rows.size(), X.cols());
  parallel_for(static_cast<std::size_t>(rows.size()), [&](std::size_t ii) {
    const auto i = static_cast<Eigen::Index>(ii);
    Eigen::VectorXd k(cols.size());
    for (Eigen::Index j = 0; j < cols.size(); ++j) k(j) = (*this)(rows(i), cols(j));
    for (Eigen::Index c = 0; c < X.cols(); ++c) Y(i, c) = pairwise_sum(Eigen::VectorXd(k.cwiseProduct(X.col(c))));
  });
  return Y;
}

}  // namespace bose
