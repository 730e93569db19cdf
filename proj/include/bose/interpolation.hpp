#pragma once

#include "bose/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <sstream>

namespace bose {

/// Clamped cubic spline on an increasing grid. Evaluation outside the
/// tabulated range throws DomainError; tables are never extrapolated.
class CubicSpline {
 public:
  CubicSpline() = default;

  CubicSpline(Eigen::VectorXd x, Eigen::VectorXd y, double slope_left, double slope_right)
      : x_(std::move(x)), y_(std::move(y)) {
    const Eigen::Index n = x_.size();
    if (n < 3 || y_.size() != n) throw DomainError("CubicSpline: need at least three matching points");
    // Solve for second derivatives (tridiagonal, Thomas algorithm).
    Eigen::VectorXd sub(n), diag(n), sup(n), rhs(n);
    const double h0 = x_(1) - x_(0);
    diag(0) = h0 / 3.0;
    sup(0) = h0 / 6.0;
    sub(0) = 0.0;
    rhs(0) = (y_(1) - y_(0)) / h0 - slope_left;
    for (Eigen::Index i = 1; i + 1 < n; ++i) {
      const double hl = x_(i) - x_(i - 1);
      const double hr = x_(i + 1) - x_(i);
      if (!(hl > 0.0 && hr > 0.0)) throw DomainError("CubicSpline: grid must increase");
      sub(i) = hl / 6.0;
      diag(i) = (hl + hr) / 3.0;
      sup(i) = hr / 6.0;
      rhs(i) = (y_(i + 1) - y_(i)) / hr - (y_(i) - y_(i - 1)) / hl;
    }
    const double hn = x_(n - 1) - x_(n - 2);
    sub(n - 1) = hn / 6.0;
    diag(n - 1) = hn / 3.0;
    sup(n - 1) = 0.0;
    rhs(n - 1) = slope_right - (y_(n - 1) - y_(n - 2)) / hn;
    for (Eigen::Index i = 1; i < n; ++i) {
      const double m = sub(i) / diag(i - 1);
      diag(i) -= m * sup(i - 1);
      rhs(i) -= m * rhs(i - 1);
    }
    m_.resize(n);
    m_(n - 1) = rhs(n - 1) / diag(n - 1);
    for (Eigen::Index i = n - 2; i >= 0; --i) m_(i) = (rhs(i) - sup(i) * m_(i + 1)) / diag(i);
    uniform_ = true;
    const double step = (x_(n - 1) - x_(0)) / static_cast<double>(n - 1);
    for (Eigen::Index i = 1; i < n; ++i) {
      if (std::abs((x_(i) - x_(i - 1)) - step) > 1e-9 * step) {
        uniform_ = false;
        break;
      }
    }
  }

  double operator()(double t) const {
    const Eigen::Index n = x_.size();
    if (n == 0) throw DomainError("CubicSpline: empty table");
    const double span = x_(n - 1) - x_(0);
    if (t < x_(0) - 1e-12 * span || t > x_(n - 1) + 1e-12 * span) {
      std::ostringstream msg;
      msg << "CubicSpline: " << t << " outside table [" << x_(0) << ", " << x_(n - 1) << "]";
      throw DomainError(msg.str());
    }
    Eigen::Index i;
    if (uniform_) {
      i = static_cast<Eigen::Index>((t - x_(0)) / span * static_cast<double>(n - 1));
    } else {
      i = static_cast<Eigen::Index>(std::upper_bound(x_.data(), x_.data() + n, t) - x_.data()) - 1;
    }
    i = std::clamp<Eigen::Index>(i, 0, n - 2);
    const double h = x_(i + 1) - x_(i);
    const double a = (x_(i + 1) - t) / h;
    const double b = (t - x_(i)) / h;
    return a * y_(i) + b * y_(i + 1) + ((a * a * a - a) * m_(i) + (b * b * b - b) * m_(i + 1)) * h * h / 6.0;
  }

  double lower() const { return x_(0); }
  double upper() const { return x_(x_.size() - 1); }
  bool empty() const { return x_.size() == 0; }

 private:
  Eigen::VectorXd x_, y_, m_;
  bool uniform_ = false;
};

}  // namespace bose
