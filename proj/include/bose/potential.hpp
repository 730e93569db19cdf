#pragma once

#include "bose/interpolation.hpp"

#include <string>
#include <vector>

namespace bose {

/// Radial profile families for V = lambda * Vtilde.
enum class ProfileFamily {
  gaussian,       ///< Vtilde(r) = exp(-r^2/sigma^2), Vtilde(0) = 1
  poly_gaussian,  ///< Vtilde(r) = sum_k c_k (r/sigma)^(2k) exp(-r^2/sigma^2), c_k >= 0
};

std::string to_string(ProfileFamily family);
ProfileFamily profile_family_from_string(const std::string& name);

struct PotentialSpec {
  ProfileFamily family = ProfileFamily::gaussian;
  double lambda = 0.0;
  double sigma = 1.0;
  std::vector<double> coefficients;  // poly_gaussian only
  double r_support = 0.0;            // beyond this V(r) < 1e-18 * lambda
};

/// Gaussian profile with width sigma and coupling lambda (lambda = 0 allowed).
PotentialSpec gaussian_potential(double sigma, double lambda);

/// Even polynomial times Gaussian cut; coefficients must be nonnegative with
/// at least one positive entry.
PotentialSpec poly_gaussian_potential(double sigma, double lambda, std::vector<double> coefficients);

/// Throws DomainError when the parameters violate lambda >= 0, sigma > 0 or the
/// nonnegativity of the profile.
void validate(const PotentialSpec& spec);

/// V(r) = lambda * Vtilde(r).
double evaluate_position(const PotentialSpec& spec, double r);

/// Continuum radial transform (4 pi / p) * int_0^inf r sin(p r) V(r) dr,
/// with the p -> 0 limit 4 pi int r^2 V. Always computed by adaptive
/// quadrature, split at the zeros of sin(p r).
double fourier_continuum(const PotentialSpec& spec, double p_norm);

/// Upper bound on |dV_hat/dp|: 4 pi int r^3 V(r) dr.
double lipschitz_bound(const PotentialSpec& spec);

/// Sum of V over the 26 nearest periodic images of the origin divided by
/// V(0): size of the periodization defect neglected by using continuum
/// transforms on a box of side L.
double periodization_defect(const PotentialSpec& spec, double L);

/// Fast evaluator for V_hat(|p|): closed form for the Gaussian family, a
/// clamped cubic spline over fourier_continuum otherwise.
class PotentialTransform {
 public:
  PotentialTransform() = default;
  explicit PotentialTransform(PotentialSpec spec, double p_max = 40.0);

  double operator()(double p_norm) const;
  double at_zero() const { return v0_; }
  const PotentialSpec& spec() const { return spec_; }
  double p_max() const { return p_max_; }

 private:
  PotentialSpec spec_;
  double p_max_ = 0.0;
  double v0_ = 0.0;
  CubicSpline table_;
};

}  // namespace bose
