#include "bose/potential.hpp"

#include "bose/error.hpp"
#include "bose/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace bose {
namespace {

constexpr double kPi = std::numbers::pi;

double profile(const PotentialSpec& spec, double r) {
  const double s = r / spec.sigma;
  const double cut = std::exp(-s * s);
  if (spec.family == ProfileFamily::gaussian) return cut;
  double poly = 0.0;
  double power = 1.0;
  for (double c : spec.coefficients) {
    poly += c * power;
    power *= s * s;
  }
  return poly * cut;
}

double find_support(const PotentialSpec& spec) {
  // profile is eventually monotone; march outward until below 1e-18 of its peak
  double peak = 0.0;
  for (double r = 0.0; r < 20.0 * spec.sigma; r += 0.01 * spec.sigma) peak = std::max(peak, profile(spec, r));
  double r = spec.sigma;
  while (profile(spec, r) > 1e-18 * peak || profile(spec, 1.1 * r) > 1e-18 * peak) r += 0.05 * spec.sigma;
  return r;
}

}  // namespace

std::string to_string(ProfileFamily family) {
  return family == ProfileFamily::gaussian ? "gaussian" : "poly_gaussian";
}

ProfileFamily profile_family_from_string(const std::string& name) {
  if (name == "gaussian") return ProfileFamily::gaussian;
  if (name == "poly_gaussian") return ProfileFamily::poly_gaussian;
  throw ConfigError("unknown potential family '" + name + "'");
}

void validate(const PotentialSpec& spec) {
  if (!(spec.lambda >= 0.0) || !std::isfinite(spec.lambda)) throw DomainError("potential: lambda must be >= 0");
  if (!(spec.sigma > 0.0) || !std::isfinite(spec.sigma)) throw DomainError("potential: sigma must be > 0");
  if (spec.family == ProfileFamily::poly_gaussian) {
    if (spec.coefficients.empty()) throw DomainError("potential: poly_gaussian needs coefficients");
    bool positive = false;
    for (double c : spec.coefficients) {
      if (c < 0.0) throw DomainError("potential: poly_gaussian coefficients must be nonnegative");
      positive = positive || c > 0.0;
    }
    if (!positive) throw DomainError("potential: poly_gaussian profile vanishes identically");
  }
  if (!(spec.r_support > 0.0)) throw DomainError("potential: r_support must be > 0");
}

PotentialSpec gaussian_potential(double sigma, double lambda) {
  PotentialSpec spec{ProfileFamily::gaussian, lambda, sigma, {}, sigma * std::sqrt(std::log(1e18))};
  validate(spec);
  return spec;
}

PotentialSpec poly_gaussian_potential(double sigma, double lambda, std::vector<double> coefficients) {
  PotentialSpec spec{ProfileFamily::poly_gaussian, lambda, sigma, std::move(coefficients), sigma};
  validate(spec);
  spec.r_support = find_support(spec);
  return spec;
}

double evaluate_position(const PotentialSpec& spec, double r) {
  if (!(r >= 0.0)) {
    std::ostringstream msg;
    msg << "evaluate_position: negative radius " << r;
    throw DomainError(msg.str());
  }
  if (spec.lambda == 0.0) return 0.0;
  return spec.lambda * profile(spec, r);
}

double fourier_continuum(const PotentialSpec& spec, double p_norm) {
  if (!(p_norm >= 0.0)) throw DomainError("fourier_continuum: |p| must be >= 0");
  if (spec.lambda == 0.0) return 0.0;
  const double R = spec.r_support;
  const double scale = 4.0 * kPi * spec.lambda * spec.sigma * spec.sigma * spec.sigma;
  const double abs_tol = 1e-15 * scale;
  if (p_norm * R < 1e-8) {
    auto f = [&](double r) { return r * r * evaluate_position(spec, r); };
    return 4.0 * kPi * integrate_adaptive(f, 0.0, R, abs_tol / (4.0 * kPi), 1e-12).value;
  }
  auto f = [&](double r) { return r * r * sinc(p_norm * r) * evaluate_position(spec, r); };
  std::vector<double> breaks{0.0};
  const double half_period = kPi / p_norm;
  for (double z = half_period; z < R; z += half_period) breaks.push_back(z);
  breaks.push_back(R);
  return 4.0 * kPi * integrate_adaptive(f, breaks, abs_tol / (4.0 * kPi), 1e-12).value;
}

double lipschitz_bound(const PotentialSpec& spec) {
  if (spec.lambda == 0.0) return 0.0;
  auto f = [&](double r) { return r * r * r * evaluate_position(spec, r); };
  return 4.0 * kPi * integrate_adaptive(f, 0.0, spec.r_support, 1e-16, 1e-12).value;
}

double periodization_defect(const PotentialSpec& spec, double L) {
  if (!(L > 0.0)) throw DomainError("periodization_defect: L must be > 0");
  if (spec.lambda == 0.0) return 0.0;
  double total = 0.0;
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j)
      for (int k = -1; k <= 1; ++k) {
        if (i == 0 && j == 0 && k == 0) continue;
        total += evaluate_position(spec, L * std::sqrt(double(i * i + j * j + k * k)));
      }
  return total / evaluate_position(spec, 0.0);
}

PotentialTransform::PotentialTransform(PotentialSpec spec, double p_max) : spec_(std::move(spec)), p_max_(p_max) {
  validate(spec_);
  if (spec_.family == ProfileFamily::gaussian) {
    v0_ = spec_.lambda * std::pow(kPi, 1.5) * spec_.sigma * spec_.sigma * spec_.sigma;
    return;
  }
  const double dp = 0.004 / spec_.sigma;
  const auto n = static_cast<Eigen::Index>(std::ceil(p_max_ / dp)) + 1;
  Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(n, 0.0, dp * static_cast<double>(n - 1));
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) y(i) = fourier_continuum(spec_, x(i));
  const double right_slope = (y(n - 1) - y(n - 2)) / (x(n - 1) - x(n - 2));
  p_max_ = x(n - 1);
  v0_ = y(0);
  table_ = CubicSpline(std::move(x), std::move(y), 0.0, right_slope);
}

double PotentialTransform::operator()(double p_norm) const {
  if (spec_.family == ProfileFamily::gaussian) {
    const double s = p_norm * spec_.sigma;
    return v0_ * std::exp(-0.25 * s * s);
  }
  return table_(p_norm);
}

}  // namespace bose
