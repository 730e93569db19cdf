#include "bose/ode.hpp"

#include "bose/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bose {
namespace {

// Dormand-Prince tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

std::vector<Eigen::VectorXd> integrate_dopri5(const OdeRhs& rhs, Eigen::VectorXd y, double t,
                                              std::span<const double> outputs, const OdeOptions& options,
                                              OdeStats* stats) {
  std::vector<Eigen::VectorXd> result;
  result.reserve(outputs.size());
  double h_next = options.initial_step;
  long steps = 0;
  OdeStats local;
  Eigen::VectorXd k1 = rhs(t, y);
  for (double target : outputs) {
    if (target < t) throw DomainError("integrate_dopri5: outputs must increase");
    while (t < target) {
      if (++steps > options.max_steps) {
        std::ostringstream msg;
        msg << "integrate_dopri5: step budget exhausted at t = " << t;
        throw NumericError(msg.str(), t);
      }
      const bool clipped = t + h_next >= target;
      const double h = clipped ? target - t : h_next;
      const Eigen::VectorXd k2 = rhs(t + c2 * h, y + h * (a21 * k1));
      const Eigen::VectorXd k3 = rhs(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
      const Eigen::VectorXd k4 = rhs(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
      const Eigen::VectorXd k5 = rhs(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      const Eigen::VectorXd k6 = rhs(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      const Eigen::VectorXd y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      const Eigen::VectorXd k7 = rhs(t + h, y_new);
      const Eigen::VectorXd err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
      const Eigen::ArrayXd scale = options.atol + options.rtol * y.cwiseAbs().cwiseMax(y_new.cwiseAbs()).array();
      const double err_norm = std::sqrt((err.array() / scale).square().mean());
      if (!std::isfinite(err_norm)) throw NumericError("integrate_dopri5: non-finite error estimate", t);
      if (err_norm <= 1.0) {
        t = clipped ? target : t + h;
        y = y_new;
        k1 = k7;
        ++local.accepted;
        // a step shortened to hit an output says little about the natural size
        if (!clipped) h_next = h * (err_norm == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(err_norm, -0.2)));
      } else {
        ++local.rejected;
        h_next = h * std::max(0.2, 0.9 * std::pow(err_norm, -0.2));
        if (h_next < 1e-14 * std::max(1.0, std::abs(t)))
          throw NumericError("integrate_dopri5: step size underflow", t);
      }
    }
    result.push_back(y);
  }
  if (stats) *stats = local;
  return result;
}

}  // namespace bose
