#pragma once

#include "bose/error.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace bose::fock {

/// exp(1/2 sum_k c_k a+_k a+_-k + sqrt(N0) a+_0)|0> on the modes
/// {0, k_1, -k_1, k_2, -k_2, ...}, stored as a dense occupation tensor. Pair
/// modes are truncated at n_max, the condensate at a cutoff whose Poisson
/// tail is below 1e-17. Every axis carries `pad` extra empty levels; they
/// are only needed for creation operators that are not normal ordered.
struct TruncatedFockState {
  std::vector<Eigen::Vector3d> modes;  // modes[0] = 0, then k_1, -k_1, ...
  std::vector<std::string> labels;     // "0", "k1", "-k1", ...
  std::vector<int> partner;            // index of -p (0 for the condensate)
  Eigen::VectorXd c;                   // per mode; c(0) = 0
  double sqrtN0 = 0.0;
  int n_max = 0;
  int condensate_cutoff = 0;
  int pad = 0;
  std::vector<Eigen::Index> dims;
  std::vector<Eigen::Index> strides;
  Eigen::VectorXd amplitudes;
  double tail_bound = 0.0;             // dropped fraction of the squared norm

  double norm2() const { return amplitudes.squaredNorm(); }
  int mode_index(const std::string& label) const;
};

/// Builds the tensor for the pair representatives `pairs` (k_i, each paired
/// with -k_i) with parameters c (|c| < 1). Throws DomainError when the
/// tensor would exceed `capacity` entries.
TruncatedFockState build_state(const std::vector<Eigen::Vector3d>& pairs, const std::vector<double>& c,
                               double sqrtN0, int n_max, int pad = 0, std::int64_t capacity = 50'000'000);

struct LadderOp {
  bool creation = false;
  int mode = 0;
};

/// Parses "a+[k1] a[-k1] a[0]" into ladder operators (leftmost first).
/// Unknown labels raise ConfigError.
std::vector<LadderOp> parse_operator_string(const TruncatedFockState& state, const std::string& text);

/// Applies the operators right to left.
Eigen::VectorXd apply(const TruncatedFockState& state, const std::vector<LadderOp>& ops, Eigen::VectorXd v);

/// <Psi, O Psi> / <Psi, Psi>. A leading run of creation operators acts on
/// the bra; creation operators left after that must fit into the padding.
double expect_moment(const TruncatedFockState& state, const std::string& operator_string);
double expect_moment(const TruncatedFockState& state, const std::vector<LadderOp>& ops);

/// Brute-force <H> split by the number of zero-momentum operators in each
/// interaction quartet. Extensive energies (not per volume).
struct HamiltonianExpectation {
  double kinetic = 0.0;
  double E0 = 0.0;
  double E2 = 0.0;
  double E4 = 0.0;
  double odd = 0.0;  // quartets with one or three zero momenta; vanish exactly
  double total = 0.0;
};

/// Sum over all quartets a+_p a+_q a_r a_s with p + q = r + s inside the
/// mode set, V_hat_{p-r} / (2 |Lambda|), plus sum p^2 a+_p a_p.
HamiltonianExpectation hamiltonian_expectation(const TruncatedFockState& state, double volume,
                                               const std::function<double(double)>& v_hat);

/// Worst case of one formula over all draws.
struct OracleCheck {
  std::string name;
  std::string expression;
  double brute = 0.0;
  double analytic = 0.0;
  double error = 0.0;      // relative, or absolute when analytic == 0
  double tolerance = 0.0;
  double tail_bound = 0.0;
  int draws = 0;
  bool pass = true;
};

struct OracleConfig {
  Eigen::Vector3i k1{1, 0, 0};
  Eigen::Vector3i k2{0, 1, 1};
  double L = 6.0;
  double lambda = 0.5;
  double sigma = 1.0;
  int n_max = 12;
  double c_bound = 0.3;
  double sqrtN0_bound = 2.0;
  int moment_draws = 100;
  int hamiltonian_draws = 20;
  std::uint64_t seed = 12345;
  double moment_tolerance = 1e-8;  // relative floor for moments
  double energy_tolerance = 1e-6;  // relative floor for <H>
  bool zero_pairs = false;        // c = 0 everywhere
  std::string fault;              // name of an analytic formula to corrupt
};

struct OracleReport {
  std::vector<OracleCheck> checks;
  double max_tail_bound = 0.0;
  bool all_pass = true;
  double seconds = 0.0;
  std::vector<std::string> failures() const;
};

/// Formula names accepted by OracleConfig::fault.
std::vector<std::string> oracle_formula_names();

/// Moment formulas, the vanishing rule, the number constraint and the full
/// <H> decomposition compared against closed forms over random draws.
OracleReport run_oracle(const OracleConfig& config);

}  // namespace bose::fock
