#include "bose/asymptotics.hpp"

#include "bose/error.hpp"
#include "bose/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace bose {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSplitY = 1e6;

// coefficients of y^-k, k = 2..7, in the large-y expansion of the bracket
std::array<double, 6> tail_coefficients(double h) {
  const double h2 = h * h, h3 = h2 * h, h4 = h3 * h, h5 = h4 * h, h6 = h5 * h;
  return {h + 0.5,
          -2.0 * h2 - 2.0 * h - 5.0 / 8.0,
          4.0 * h3 + 6.0 * h2 + 15.0 * h / 4.0 + 7.0 / 8.0,
          -8.0 * h4 - 16.0 * h3 - 15.0 * h2 - 7.0 * h - 21.0 / 16.0,
          16.0 * h5 + 40.0 * h4 + 50.0 * h3 + 35.0 * h2 + 105.0 * h / 8.0 + 33.0 / 16.0,
          -32.0 * h6 - 96.0 * h5 - 150.0 * h4 - 140.0 * h3 - 315.0 * h2 / 4.0 - 99.0 * h / 4.0 - 429.0 / 128.0};
}

// x = scale (s/(1-s))^2 maps [0, 1) onto [0, inf)
template <typename F>
double compactified(F&& f, double scale, double s) {
  if (s >= 1.0) return 0.0;
  const double q = s / (1.0 - s);
  const double jac = 2.0 * scale * s / ((1.0 - s) * (1.0 - s) * (1.0 - s));
  return f(scale * q * q) * jac;
}

}  // namespace

PhiResult phi(double h, double abs_tol) {
  if (!(h >= 0.0)) {
    std::ostringstream msg;
    msg << "phi: h = " << h << " must be >= 0";
    throw DomainError(msg.str());
  }
  // y = t^2: y^(1/2) bracket dy = [1 - 2 t^2 / (sqrt(A) + B)] dt
  auto integrand = [h](double t) {
    const double y = t * t;
    const double root = std::sqrt((y + 2.0 * h) * (y + 2.0 + 2.0 * h));
    return 1.0 - 2.0 * y / (root + y + 1.0 + 2.0 * h);
  };
  const double T = std::sqrt(kSplitY);
  std::vector<double> breaks{0.0};
  if (h > 0.0 && std::sqrt(2.0 * h) < 0.1) breaks.push_back(std::sqrt(2.0 * h));
  for (double b : {0.1, 1.0, 10.0, 100.0}) breaks.push_back(b);
  breaks.push_back(T);
  const Integral body = integrate_adaptive(integrand, breaks, abs_tol, 1e-14, 20000);

  const auto c = tail_coefficients(h);
  double tail = 0.0;
  double last = 0.0;
  for (int k = 2; k <= 7; ++k) {
    last = c[static_cast<std::size_t>(k - 2)] * std::pow(kSplitY, 1.5 - k) / (k - 1.5);
    tail += last;
  }
  PhiResult r;
  r.h = h;
  r.value = body.value + tail;
  r.quadrature_error = body.error + std::abs(last);
  r.split_point = kSplitY;
  return r;
}

double phi_prime0() {
  auto f = [](double y) { return 2.0 / (std::sqrt(y + 2.0) * (y + 1.0 + std::sqrt(y * (y + 2.0)))); };
  const std::vector<double> breaks{0.0, 0.25, 0.5, 0.75, 0.95, 1.0};
  return integrate_adaptive([&](double s) { return compactified(f, 1.0, s); }, breaks, 1e-15, 1e-14).value;
}

double q_of_h(double h, double a, double rho, double N) {
  if (!(h >= 0.0) || !(a >= 0.0) || !(rho >= 0.0) || !(N >= 0.0))
    throw DomainError("q_of_h: arguments must be nonnegative");
  return 4.0 * kPi * a * N * rho * std::sqrt(32.0 / kPi) * phi(h).value * std::sqrt(a * a * a * rho);
}

double s_lambda(double h) {
  static const double phi0 = phi(0.0).value;
  return phi(h).value / phi0;
}

double lhy_coefficient() { return 128.0 / (15.0 * std::sqrt(kPi)); }

double lhy_prediction(double rho, double a) {
  if (!(rho >= 0.0) || !(a >= 0.0)) throw DomainError("lhy_prediction: arguments must be nonnegative");
  return 4.0 * kPi * rho * a * (1.0 + lhy_coefficient() * std::sqrt(rho * a * a * a));
}

double integrand_G(double x, double f, double v) {
  if (!(x > 0.0)) throw DomainError("integrand_G: x must be > 0");
  const double A = (x + 2.0 * f) * (x + 2.0 * v);
  if (A < 0.0) throw DomainError("integrand_G: (x+2f)(x+2V) < 0");
  const double root = std::sqrt(A);
  const double g = v - f;
  // sqrt(A) + f + V - x = (2x(f+V) + 4fV)/(sqrt(A) + x) + f + V
  const double num = (2.0 * x * (f + v) + 4.0 * f * v) / (root + x) + f + v;
  return g * g * num / (2.0 * (root + x + f + v));
}

double integrand_G(double x, double p_norm, const ScatteringSolution& scat) {
  return integrand_G(x, scat.f_hat_at(p_norm), scat.v_hat_at(p_norm));
}

double integrand_F(double x, double p_norm, const ScatteringSolution& scat) {
  return integrand_G(x, p_norm, scat) / std::sqrt(x);
}

double vanishing_locus(double f, double v) { return (f - v) * (f - v) / (4.0 * (f + v)); }

QIntegral q_from_integral(const ScatteringSolution& scat, double rho, double N) {
  if (!(rho > 0.0) || !(N > 0.0)) throw DomainError("q_from_integral: rho and N must be > 0");
  if (!(scat.g0 > 0.0)) throw DomainError("q_from_integral: needs g_hat_0 > 0");
  const double prefactor = N * std::pow(rho, 1.5) / (8.0 * kPi * kPi);
  QIntegral out;
  const double delta = select_delta(scat);
  out.split = delta * delta;

  auto frozen = [&](double x) { return x > 0.0 ? integrand_G(x, scat.f0, scat.v0) / std::sqrt(x) : 0.0; };
  const std::vector<double> s_breaks{0.0, 0.05, 0.2, 0.5, 0.8, 0.95, 0.99, 1.0};
  const Integral fz =
      integrate_adaptive([&](double s) { return compactified(frozen, scat.g0, s); }, s_breaks, 1e-16, 1e-13, 20000);
  out.frozen = prefactor * fz.value;

  // full integrand in p = sqrt(rho x): F dx = F(p^2/rho, p) 2p/rho dp
  auto full = [&](double p) {
    if (p <= 0.0) return scat.g0 * scat.g0 / std::sqrt(rho);  // G(0) = g0^2 / 2
    const double x = p * p / rho;
    return integrand_G(x, p, scat) / std::sqrt(x) * 2.0 * p / rho;
  };
  std::vector<double> low{0.0};
  for (double p = 1e-4 * std::sqrt(rho * scat.g0); p < delta; p *= 2.0) low.push_back(p);
  low.push_back(delta);
  std::vector<double> high{delta};
  for (double p = std::ceil(delta / 0.25) * 0.25; p < scat.p_max(); p += 0.25)
    if (p > delta) high.push_back(p);
  high.push_back(scat.p_max());
  const Integral inner = integrate_adaptive(full, low, 1e-18, 1e-13, 20000);
  const Integral outer = integrate_adaptive(full, high, 1e-18, 1e-13, 20000);
  out.full = prefactor * (inner.value + outer.value);
  out.tail_integral = outer.value;
  out.error = prefactor * (inner.error + outer.error);
  out.closed_form = q_of_h(scat.h, scat.a, rho, N);
  return out;
}

}  // namespace bose
