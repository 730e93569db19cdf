#pragma once

#include <Eigen/Dense>

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace bose {

/// All dual-lattice momenta 2*pi/L * n with |n|^2 = norm2.
struct Shell {
  long norm2 = 0;
  long multiplicity = 0;
  double p2 = 0.0;
  double p = 0.0;
};

/// Periodic cube of side L and its dual lattice truncated at p_cut.
struct LatticeSpec {
  double L = 0.0;
  double p_cut = 0.0;
  std::vector<Shell> shells;  // sorted by |p|^2, origin excluded

  double volume() const { return L * L * L; }
  double spacing() const;
  long point_count() const;
};

/// Default cutoff 8 * max(1/sigma, 1).
double default_p_cut(double sigma);

/// Enumerates nonzero dual-lattice points with |p| <= p_cut grouped into
/// shells. Throws DomainError when no shell lies below the cutoff.
LatticeSpec enumerate_shells(double L, double p_cut);

/// Radial measure for sums over momenta: sum_i weights(i) * F(nodes(i))
/// approximates (1/|Lambda|) sum_{p != 0} F(|p|) or its continuum limit
/// int d^3p / (2pi)^3 F(|p|). `volume` is |Lambda| (infinite for the
/// continuum); it scales the non-extensive 1/|Lambda| terms.
struct MomentumMeasure {
  enum class Kind { shells, continuum, hybrid };
  Kind kind = Kind::continuum;
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
  double volume = std::numeric_limits<double>::infinity();
  double L = std::numeric_limits<double>::infinity();

  Eigen::Index size() const { return nodes.size(); }
  bool finite() const { return std::isfinite(volume); }
  double integrate(const Eigen::VectorXd& values) const;
};

std::string to_string(MomentumMeasure::Kind kind);

/// Literal shell sums: nodes are shell radii, weights multiplicity / L^3.
MomentumMeasure shell_measure(const LatticeSpec& lattice);

/// Spherical Gauss-Legendre measure on [0, p_cut]: geometric panels (ratio
/// sqrt 2) from p_low up to p_mid, uniform panels of width `panel` above.
MomentumMeasure continuum_measure(double p_low, double p_mid, double p_cut, double panel = 0.25,
                                  int order = 16);

/// Exact shells below a smooth switch and the continuum rule above it. The
/// switch runs from p_out/2 to p_out = 2 pi M / L, where M is the largest
/// integer radius whose shells are all retained, so each box size keeps the
/// same number of shells. The continuum part is resolved down to p_out/2.
MomentumMeasure hybrid_measure(double L, double p_mid, double p_cut, int shell_radius = 48,
                               double panel = 0.25, int order = 16);

/// (1/|Lambda|) sum over shells of multiplicity * F(|p|^2), reduced pairwise.
double riemann_sum(const std::function<double(double)>& F, const LatticeSpec& lattice);

struct Extrapolation {
  double value = 0.0;
  double error_estimate = 0.0;  // magnitude of the last correction
  std::vector<double> raw;
};

/// Richardson extrapolation of values computed at h, h/ratio, h/ratio^2, ...
/// assuming an error expansion in h^orders[0], h^orders[1], ...
/// values.size() must equal orders.size() + 1.
Extrapolation richardson(const std::vector<double>& values, double ratio, const std::vector<int>& orders);

struct RiemannOptions {
  int refinements = 2;                 // L0, 2 L0, 4 L0
  std::vector<int> orders = {3, 6};    // error powers of 1/L
  double tail_estimate = 0.0;          // caller's bound on the cutoff tail
  double tail_tolerance = 1e-12;
};

struct RiemannLimit {
  double value = 0.0;                  // lattice value at L0
  Extrapolation extrapolated;
  std::vector<double> box_sides;
  bool diverging = false;              // successive lattice values do not settle
};

/// Lattice sums at L0 * 2^k and their Richardson limit. Throws NumericError
/// when the declared tail estimate exceeds the tolerance.
RiemannLimit riemann_limit(const std::function<double(double)>& F, double L0, double p_cut,
                           const RiemannOptions& options = {});

}  // namespace bose
