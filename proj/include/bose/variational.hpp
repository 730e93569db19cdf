#pragma once

#include "bose/error.hpp"
#include "bose/lattice.hpp"
#include "bose/scattering.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace bose {

template <typename Scalar>
struct AbcMinimum {
  Scalar e;
  Scalar m;
};

/// a e^2/(1-2e) + b e/(1-2e) - c e for e < 1/2.
template <typename Scalar>
Scalar abc_objective(Scalar a, Scalar b, Scalar c, Scalar e) {
  return (a * e * e + b * e) / (Scalar(1) - Scalar(2) * e) - c * e;
}

/// Minimizer over e < 1/2 of abc_objective and its minimal value. Both are
/// evaluated in rationalized form, so b close to c loses no digits.
template <typename Scalar>
AbcMinimum<Scalar> abc_minimize(Scalar a, Scalar b, Scalar c) {
  using std::sqrt;
  if (!(a + Scalar(2) * c > Scalar(0))) throw DomainError("abc_minimize: requires a + 2c > 0");
  if (!(a + Scalar(2) * b > Scalar(0))) throw DomainError("abc_minimize: requires a + 2b > 0");
  const Scalar x = (b - c) / (a + Scalar(2) * c);
  // 1/2 [1 - sqrt(1 + 2x)] = -x / (1 + sqrt(1 + 2x))
  const Scalar e = -x / (Scalar(1) + sqrt(Scalar(1) + Scalar(2) * x));
  // 1/2 [sqrt((a+2b)(a+2c)) - (a+b+c)] = -(b-c)^2 / (2 [sqrt(...) + a+b+c])
  const Scalar root = sqrt((a + Scalar(2) * b) * (a + Scalar(2) * c));
  const Scalar m = -(b - c) * (b - c) / (Scalar(2) * (root + a + b + c));
  return {e, m};
}

/// e_p = 1/2 [1 - (1 + 2 rho g_p / (p^2 + 2 rho f_p))^(1/2)].
double minimizer_e(double p2, double rho, double g_p, double f_p);

/// m_p = 1/2 [sqrt((p^2 + 2 rho V_p)(p^2 + 2 rho f_p)) - (p^2 + rho (V_p + f_p))], V_p = f_p + g_p.
double minimal_value_m(double p2, double rho, double g_p, double f_p);

/// Trial-state parameters on the nodes of a momentum measure.
struct VariationalState {
  double rho = 0.0;
  MomentumMeasure measure;
  Eigen::VectorXd v_hat, f_hat, g_hat, v_hat_2p;
  Eigen::VectorXd e;
  Eigen::VectorXd c;                 // e / (1 - e)
  double depletion_density = 0.0;    // (1/|Lambda|) sum c^2 / (1 - c^2)
  double condensate_density = 0.0;   // rho - depletion_density

  double N() const { return rho * measure.volume; }
  double N0() const { return condensate_density * measure.volume; }
  double depletion() const { return depletion_density / rho; }
};

/// Fills e_p = minimizer_e on every node and derives N0 from the particle
/// number constraint. Throws DomainError when a node lies outside the
/// scattering tables, when the minimizer's radicand conditions fail, or
/// when N0 <= 0.
VariationalState build_state(const ScatteringSolution& scat, double rho, const MomentumMeasure& measure);

/// Same nodes and potential data with caller-supplied e_p (all < 1/2).
VariationalState state_with_parameters(const ScatteringSolution& scat, double rho, const MomentumMeasure& measure,
                                       const Eigen::VectorXd& e);

/// Energies per unit volume (E / |Lambda|); per_particle = E_total / rho.
struct EnergyBreakdown {
  double E_M = 0.0;
  double Omega2 = 0.0;
  double Omega4 = 0.0;
  double E_total = 0.0;
  double per_particle = 0.0;
  double rho = 0.0;
  double volume = 0.0;
  std::vector<std::pair<std::string, double>> channels;

  double channel(const std::string& name) const;
};

/// Channel names in output order.
const std::vector<std::string>& channel_names();

/// Full energy E_M + Omega2 + Omega4 on the state's measure. Convolution
/// sums use the angular-averaged kernel; the excluded r = +-p points are
/// subtracted through their 1/|Lambda| contributions.
EnergyBreakdown energy_full(const VariationalState& state, const ScatteringSolution& scat);

/// A finite mode set {0, +-k_1, +-k_2, ...} with real pair parameters.
struct ModeSet {
  std::vector<Eigen::Vector3d> momenta;  // nonzero, closed under p -> -p
  Eigen::VectorXd c;                     // c(i) for momenta[i]; c(-p) = c(p)
  double N0 = 0.0;
  double volume = 1.0;
};

/// Throws ConfigError unless the momenta are nonzero, distinct and closed
/// under p -> -p with matching c.
void validate(const ModeSet& modes);

/// Energy of the squeezed state on a finite mode set with literal sums over
/// momentum vectors (no angular averaging); N = N0 + sum n_p.
EnergyBreakdown energy_modes(const ModeSet& modes, const std::function<double(double)>& v_hat);

/// Reduced forms of the energy (per unit volume).
struct ReducedEnergy {
  double leading = 0.0;        // 4 pi a rho^2
  double bracket_sum = 0.0;    // int [p^2 e^2/(1-2e) + rho V e/(1-2e) - rho f e]
  double m_sum = 0.0;          // int m_p
  double g2_term = 0.0;        // int rho^2 g^2 / (4 p^2)
  double cross_term = 0.0;     // 1/2 (e + rho w, V * (e + rho w))
  double e3_convolution = 0.0; // 1/2 (e, V * e)
  double e3_w_term = 0.0;      // rho^2 / 2 int V w
  double e3_total = 0.0;
  double e4_total = 0.0;
};

ReducedEnergy energy_reduced(const VariationalState& state, const ScatteringSolution& scat);

/// Ratios whose boundedness along a rho sweep mirrors the error estimates
/// dropped in the reduction of the energy.
std::map<std::string, double> error_term_diagnostics(const VariationalState& state, const ScatteringSolution& scat);

}  // namespace bose
