#pragma once

#include "bose/lattice.hpp"
#include "bose/scattering.hpp"
#include "bose/variational.hpp"

#include <string>
#include <vector>

namespace bose {

struct EnergyOptions {
  double box_factor = 8.0;           // L0 = 2 pi box_factor / sqrt(rho V_hat_0)
  double p_mid = 1.0;                // geometric panels below, uniform above
  double p_cut = 0.0;                // 0: the scattering table range
  int shell_radius = 48;
  int refinements = 2;               // L0, 2 L0, 4 L0
  std::vector<int> orders = {3, 6};  // error powers of 1/L
  double box_side = 0.0;             // > 0 overrides L0
};

/// Energy of the minimizing state on a hybrid lattice measure of side L.
struct EnergyPoint {
  double rho = 0.0;
  double L = 0.0;
  long nodes = 0;
  EnergyBreakdown energy;
  double depletion = 0.0;            // (N - N0) / N
};

struct EnergyLimit {
  double rho = 0.0;
  std::vector<EnergyPoint> boxes;
  Extrapolation per_particle;        // L -> infinity
  Extrapolation depletion;
  double kappa = 0.0;                // from the extrapolated per-particle energy
};

/// Smallest box of the sequence: several healing lengths 1/sqrt(rho V_hat_0).
double default_box_side(const ScatteringSolution& scat, double rho, double box_factor = 8.0);

EnergyPoint energy_point(const ScatteringSolution& scat, double rho, double L, const EnergyOptions& options = {});

/// Points at L0 * 2^k, k = 0..refinements, and their Richardson limit.
EnergyLimit energy_limit(const ScatteringSolution& scat, double rho, const EnergyOptions& options = {});

/// (E/N - 4 pi rho a) / (4 pi rho a (rho a^3)^(1/2)).
double kappa_of(double per_particle, double rho, double a);

/// Least squares kappa(rho) = kappa0 + b sqrt(rho) + c sqrt(rho) log(rho).
struct KappaFit {
  double kappa0 = 0.0;
  double b = 0.0;
  double c = 0.0;
  double rms = 0.0;
};
KappaFit fit_kappa(const std::vector<double>& rho, const std::vector<double>& kappa);

/// Slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct LhyCheck {
  double lambda = 0.0;
  double a = 0.0;
  double h = 0.0;
  double phi = 0.0;
  double target = 0.0;               // sqrt(32/pi) Phi(h)
  std::vector<double> rho;
  std::vector<EnergyLimit> points;
  std::vector<double> kappa;
  std::vector<double> residual_ratio;  // (E/N / 4 pi rho a - 1 - target (rho a^3)^(1/2)) / (rho |log rho|)
  KappaFit fit;
  double ratio = 0.0;                // fit.kappa0 / target
  double depletion_exponent = 0.0;   // log-log slope against rho
  bool residual_bounded = false;
  bool pass = false;
  double seconds = 0.0;
};

/// Runs the rho sweep (increasing) and compares the extrapolated
/// coefficient with sqrt(32/pi) Phi(h). `tolerance` is relative.
LhyCheck lhy_check(const ScatteringSolution& scat, const std::vector<double>& rho, double tolerance = 0.05,
                   const EnergyOptions& options = {});

/// Depletion (N - N0)/N at fixed rho for several Gaussian strengths, from
/// the extrapolated lattice energies, with the log-log slope against lambda.
struct DepletionScan {
  std::vector<double> lambda;
  std::vector<double> depletion;
  std::vector<double> a;
  double exponent = 0.0;
};
DepletionScan depletion_vs_lambda(double sigma, const std::vector<double>& lambdas, double rho,
                                  const EnergyOptions& options = {});

}  // namespace bose
