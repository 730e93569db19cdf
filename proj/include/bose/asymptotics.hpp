#pragma once

#include "bose/scattering.hpp"

namespace bose {

struct PhiResult {
  double h = 0.0;
  double value = 0.0;
  double quadrature_error = 0.0;  // includes the truncation bound of the tail series
  double split_point = 0.0;       // Y beyond which the large-y series is integrated exactly
};

/// Phi(h) = int_0^inf y^(1/2) [sqrt((y+2h)(y+2+2h)) - (y+1+2h) + 1/(2y)] dy.
/// The bracket is evaluated as 1/(2y) - 1/(sqrt(..) + y+1+2h); y = t^2
/// removes the endpoint singularity; beyond Y = 1e6 the series
/// sum_k c_k(h) y^-k (k = 2..7) is integrated in closed form.
PhiResult phi(double h, double abs_tol = 1e-13);

/// Phi'(0) = int_0^inf 2 / (sqrt(y+2) (y+1+sqrt(y(y+2)))) dy = 4 sqrt(2)/3.
double phi_prime0();

/// 4 pi a N rho sqrt(32/pi) Phi(h) (a^3 rho)^(1/2).
double q_of_h(double h, double a, double rho, double N);

/// Phi(h) / Phi(0).
double s_lambda(double h);

/// 4 pi rho a [1 + 128/(15 sqrt(pi)) (rho a^3)^(1/2)].
double lhy_prediction(double rho, double a);

/// 128 / (15 sqrt(pi)).
double lhy_coefficient();

/// F(x, p) = x^(1/2) [sqrt((x+2f)(x+2V)) - (x+f+V) + g^2/(2x)] with the
/// potential data at |p|, evaluated as x^(-1/2) G(x, p).
double integrand_F(double x, double p_norm, const ScatteringSolution& scat);

/// G(x, p) = g^2 [sqrt(A) + f + V - x] / (2 [sqrt(A) + x + f + V]) with
/// A = (x+2f)(x+2V); the bracket in the numerator is rationalized so large
/// x does not cancel.
double integrand_G(double x, double p_norm, const ScatteringSolution& scat);

/// Same as integrand_G for explicit (f, V) values.
double integrand_G(double x, double f, double v);

/// Zero of the numerator 4 (f+V) x - g^2 of the second form of G.
double vanishing_locus(double f, double v);

struct QIntegral {
  double full = 0.0;          // Q from int F(x, sqrt(rho x)) dx
  double frozen = 0.0;        // Q from int F(x, 0) dx
  double closed_form = 0.0;   // q_of_h(h, a, rho, N)
  double split = 0.0;         // c: the integrals are split at x = c / rho
  double tail_integral = 0.0; // int_{x >= c/rho} F(x, sqrt(rho x)) dx
  double error = 0.0;         // quadrature estimate on the full integral
};

/// Q through the x-integrals. The frozen integral uses x = g0 (s/(1-s))^2
/// on s in [0, 1), independent of phi(). The split constant is c = delta^2.
QIntegral q_from_integral(const ScatteringSolution& scat, double rho, double N);

}  // namespace bose
