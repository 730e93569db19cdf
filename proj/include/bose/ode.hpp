#pragma once

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <vector>

namespace bose {

struct OdeOptions {
  double rtol = 1e-13;
  double atol = 1e-16;
  double initial_step = 1e-4;
  long max_steps = 2'000'000;
};

struct OdeStats {
  long accepted = 0;
  long rejected = 0;
};

using OdeRhs = std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>;

/// Dormand-Prince 5(4) with embedded error control. Steps are shortened to
/// land exactly on each requested output abscissa (increasing, > t0), so the
/// returned states carry the full fifth-order accuracy. Throws NumericError
/// when the step count or minimum step size is exhausted.
std::vector<Eigen::VectorXd> integrate_dopri5(const OdeRhs& rhs, Eigen::VectorXd y0, double t0,
                                              std::span<const double> outputs, const OdeOptions& options = {},
                                              OdeStats* stats = nullptr);

}  // namespace bose
