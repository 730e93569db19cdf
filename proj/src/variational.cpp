#include "bose/variational.hpp"

#include "bose/kernel.hpp"
#include "bose/parallel.hpp"
#include "bose/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace bose {
namespace {

constexpr double kPi = std::numbers::pi;

void check_radicand(double p2, double rho, double g_p, double f_p) {
  if (!(p2 + 2.0 * rho * f_p > 0.0)) {
    std::ostringstream msg;
    msg << "minimizer: p^2 + 2 rho f_p = " << p2 + 2.0 * rho * f_p << " <= 0; density too large";
    throw DomainError(msg.str());
  }
  if (!(p2 + 2.0 * rho * (f_p + g_p) > 0.0)) {
    std::ostringstream msg;
    msg << "minimizer: p^2 + 2 rho V_p = " << p2 + 2.0 * rho * (f_p + g_p) << " <= 0; density too large";
    throw DomainError(msg.str());
  }
}

struct Moments {
  Eigen::VectorXd n;  // c^2/(1-c^2) = e^2/(1-2e)
  Eigen::VectorXd t;  // c/(1-c^2) = e(1-e)/(1-2e)
};

Moments moments_from_e(const Eigen::VectorXd& e) {
  const Eigen::ArrayXd ea = e.array();
  const Eigen::ArrayXd denom = 1.0 - 2.0 * ea;
  return {(ea * ea / denom).matrix(), (ea * (1.0 - ea) / denom).matrix()};
}

double diagonal_term(double v0, double v2p, double c) {
  const double c2 = c * c;
  const double d = 1.0 - c2;
  return (v0 * c2 * (1.0 + 3.0 * c2) + v2p * c2 * (1.0 + c2)) / (d * d);
}

EnergyBreakdown assemble(double rho, double volume, const std::vector<std::pair<std::string, double>>& channels) {
  EnergyBreakdown out;
  out.rho = rho;
  out.volume = volume;
  out.channels = channels;
  out.E_M = out.channel("hartree") + out.channel("kinetic") + out.channel("direct") + out.channel("pairing") +
            out.channel("cross") + out.channel("exchange_correction");
  out.Omega2 = out.channel("omega2_mixed") + out.channel("omega2_square");
  out.Omega4 = out.channel("omega4_pairs") + out.channel("omega4_diagonal");
  out.E_total = out.E_M + out.Omega2 + out.Omega4;
  out.per_particle = rho > 0.0 ? out.E_total / rho : 0.0;
  return out;
}

}  // namespace

double minimizer_e(double p2, double rho, double g_p, double f_p) {
  check_radicand(p2, rho, g_p, f_p);
  return abc_minimize(p2, rho * (f_p + g_p), rho * f_p).e;
}

double minimal_value_m(double p2, double rho, double g_p, double f_p) {
  check_radicand(p2, rho, g_p, f_p);
  return abc_minimize(p2, rho * (f_p + g_p), rho * f_p).m;
}

VariationalState state_with_parameters(const ScatteringSolution& scat, double rho, const MomentumMeasure& measure,
                                       const Eigen::VectorXd& e) {
  if (!(rho >= 0.0)) throw DomainError("build_state: rho must be >= 0");
  if (e.size() != measure.size()) throw DomainError("build_state: one parameter per node required");
  if (measure.size() > 0 && measure.nodes.maxCoeff() > scat.p_max()) {
    std::ostringstream msg;
    msg << "build_state: node |p| = " << measure.nodes.maxCoeff() << " beyond scattering table " << scat.p_max();
    throw DomainError(msg.str());
  }
  if ((e.array() >= 0.5).any()) throw DomainError("build_state: every e_p must stay below 1/2");
  VariationalState s;
  s.rho = rho;
  s.measure = measure;
  const Eigen::Index m = measure.size();
  s.v_hat.resize(m);
  s.f_hat.resize(m);
  s.g_hat.resize(m);
  s.v_hat_2p.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double p = measure.nodes(i);
    s.v_hat(i) = scat.v_hat_at(p);
    s.f_hat(i) = scat.f_hat_at(p);
    s.g_hat(i) = s.v_hat(i) - s.f_hat(i);
    s.v_hat_2p(i) = scat.v_hat_at(2.0 * p);
  }
  s.e = e;
  s.c = e.array() / (1.0 - e.array());
  s.depletion_density = measure.integrate(moments_from_e(e).n);
  s.condensate_density = rho - s.depletion_density;
  return s;
}

VariationalState build_state(const ScatteringSolution& scat, double rho, const MomentumMeasure& measure) {
  if (!(rho > 0.0)) throw DomainError("build_state: rho must be > 0");
  Eigen::VectorXd e(measure.size());
  for (Eigen::Index i = 0; i < measure.size(); ++i) {
    const double p = measure.nodes(i);
    if (p > scat.p_max()) throw DomainError("build_state: node beyond scattering table");
    const double f = scat.f_hat_at(p);
    const double g = scat.v_hat_at(p) - f;
    e(i) = minimizer_e(p * p, rho, g, f);
  }
  VariationalState s = state_with_parameters(scat, rho, measure, e);
  if (!(s.condensate_density > 0.0)) {
    std::ostringstream msg;
    msg << "build_state: depletion " << s.depletion_density << " exceeds rho = " << rho << "; not dilute";
    throw DomainError(msg.str());
  }
  return s;
}

double EnergyBreakdown::channel(const std::string& name) const {
  for (const auto& [key, value] : channels)
    if (key == name) return value;
  throw ConfigError("EnergyBreakdown: unknown channel '" + name + "'");
}

const std::vector<std::string>& channel_names() {
  static const std::vector<std::string> names = {"hartree",      "kinetic",       "direct",
                                                 "pairing",      "cross",         "exchange_correction",
                                                 "omega2_mixed", "omega2_square", "omega4_pairs",
                                                 "omega4_diagonal"};
  return names;
}

EnergyBreakdown energy_full(const VariationalState& state, const ScatteringSolution& scat) {
  const MomentumMeasure& mu = state.measure;
  const Eigen::VectorXd& P = mu.nodes;
  const Eigen::VectorXd& W = mu.weights;
  const double rho = state.rho;
  const double v0 = scat.v0;
  const double inv_vol = mu.finite() ? 1.0 / mu.volume : 0.0;
  const Moments mo = moments_from_e(state.e);
  const double nbar = state.depletion_density;

  const PairKernel kernel(scat.potential);
  Eigen::MatrixXd X(P.size(), 2);
  X.col(0) = W.cwiseProduct(mo.t);
  X.col(1) = W.cwiseProduct(mo.n);
  const Eigen::MatrixXd KX = kernel.apply(P, P, X);

  const Eigen::ArrayXd p2 = P.array().square();
  const Eigen::ArrayXd n = mo.n.array();
  const Eigen::ArrayXd t = mo.t.array();
  const Eigen::ArrayXd v = state.v_hat.array();
  const Eigen::ArrayXd v2 = state.v_hat_2p.array();
  Eigen::VectorXd diag(P.size());
  for (Eigen::Index i = 0; i < P.size(); ++i) diag(i) = diagonal_term(v0, v2(i), state.c(i));

  std::vector<std::pair<std::string, double>> ch;
  ch.emplace_back("hartree", 0.5 * v0 * rho * rho);
  ch.emplace_back("kinetic", mu.integrate((p2 * n).matrix()));
  ch.emplace_back("direct", rho * mu.integrate((v * n).matrix()));
  ch.emplace_back("pairing", rho * mu.integrate((v * t).matrix()));
  ch.emplace_back("cross", 0.5 * mu.integrate((t * KX.col(0).array()).matrix()) -
                               0.5 * inv_vol * mu.integrate(((v0 + v2) * t * t).matrix()));
  ch.emplace_back("exchange_correction", -nbar * mu.integrate((v * t).matrix()));
  ch.emplace_back("omega2_mixed", -nbar * mu.integrate(((v + v0) * n).matrix()));
  ch.emplace_back("omega2_square", 0.5 * v0 * nbar * nbar);
  ch.emplace_back("omega4_pairs", 0.5 * v0 * nbar * nbar + 0.5 * mu.integrate((n * KX.col(1).array()).matrix()) -
                                      0.5 * inv_vol * mu.integrate(((3.0 * v0 + v2) * n * n).matrix()));
  ch.emplace_back("omega4_diagonal", 0.5 * inv_vol * mu.integrate(diag));
  return assemble(rho, mu.volume, ch);
}

void validate(const ModeSet& modes) {
  const auto m = modes.momenta.size();
  if (static_cast<Eigen::Index>(m) != modes.c.size()) throw ConfigError("mode set: one c per momentum required");
  if (!(modes.volume > 0.0)) throw ConfigError("mode set: volume must be > 0");
  if (!(modes.N0 >= 0.0)) throw ConfigError("mode set: N0 must be >= 0");
  for (std::size_t i = 0; i < m; ++i) {
    if (modes.momenta[i].norm() == 0.0) throw ConfigError("mode set: the condensate mode is implicit");
    if (!(std::abs(modes.c(static_cast<Eigen::Index>(i))) < 1.0)) throw ConfigError("mode set: |c| must be < 1");
    bool partner = false;
    for (std::size_t j = 0; j < m; ++j) {
      if (j != i && (modes.momenta[i] - modes.momenta[j]).norm() == 0.0)
        throw ConfigError("mode set: duplicate momentum");
      if ((modes.momenta[i] + modes.momenta[j]).norm() == 0.0) {
        partner = true;
        if (modes.c(static_cast<Eigen::Index>(i)) != modes.c(static_cast<Eigen::Index>(j)))
          throw ConfigError("mode set: c must satisfy c(-p) = c(p)");
      }
    }
    if (!partner) throw ConfigError("mode set: momenta must be closed under p -> -p");
  }
}

EnergyBreakdown energy_modes(const ModeSet& modes, const std::function<double(double)>& v_hat) {
  validate(modes);
  const auto m = static_cast<Eigen::Index>(modes.momenta.size());
  const double vol = modes.volume;
  const double v0 = v_hat(0.0);
  Eigen::VectorXd n(m), t(m), v(m), v2(m), p2(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double c = modes.c(i);
    n(i) = c * c / (1.0 - c * c);
    t(i) = c / (1.0 - c * c);
    const double p = modes.momenta[static_cast<std::size_t>(i)].norm();
    p2(i) = p * p;
    v(i) = v_hat(p);
    v2(i) = v_hat(2.0 * p);
  }
  const double ntot = n.sum();
  const double N = modes.N0 + ntot;
  const double rho = N / vol;
  double cross = 0.0;
  double pairs = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Vector3d& p = modes.momenta[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < m; ++j) {
      const Eigen::Vector3d& r = modes.momenta[static_cast<std::size_t>(j)];
      if ((p - r).norm() == 0.0 || (p + r).norm() == 0.0) continue;
      const double vpr = v_hat((p - r).norm());
      cross += vpr * t(i) * t(j);
      pairs += (v0 + vpr) * n(i) * n(j);
    }
  }
  double diag = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) diag += diagonal_term(v0, v2(i), modes.c(i));

  // extensive values, divided by the volume at the end
  std::vector<std::pair<std::string, double>> ch;
  ch.emplace_back("hartree", v0 * N * N / (2.0 * vol));
  ch.emplace_back("kinetic", p2.dot(n));
  ch.emplace_back("direct", rho * v.dot(n));
  ch.emplace_back("pairing", rho * v.dot(t));
  ch.emplace_back("cross", cross / (2.0 * vol));
  ch.emplace_back("exchange_correction", -ntot * v.dot(t) / vol);
  ch.emplace_back("omega2_mixed", -ntot * (v.array() + v0).matrix().dot(n) / vol);
  ch.emplace_back("omega2_square", v0 * ntot * ntot / (2.0 * vol));
  ch.emplace_back("omega4_pairs", pairs / (2.0 * vol));
  ch.emplace_back("omega4_diagonal", diag / (2.0 * vol));
  for (auto& entry : ch) entry.second /= vol;
  return assemble(rho, vol, ch);
}

ReducedEnergy energy_reduced(const VariationalState& state, const ScatteringSolution& scat) {
  const MomentumMeasure& mu = state.measure;
  const Eigen::VectorXd& P = mu.nodes;
  const double rho = state.rho;
  const Eigen::ArrayXd p2 = P.array().square();
  const Eigen::ArrayXd e = state.e.array();
  const Eigen::ArrayXd v = state.v_hat.array();
  const Eigen::ArrayXd f = state.f_hat.array();
  const Eigen::ArrayXd g = state.g_hat.array();
  const Eigen::ArrayXd w = g / (2.0 * p2);

  Eigen::VectorXd m_p(P.size());
  for (Eigen::Index i = 0; i < P.size(); ++i) m_p(i) = minimal_value_m(p2(i), rho, g(i), f(i));

  const PairKernel kernel(scat.potential);
  Eigen::MatrixXd X(P.size(), 2);
  X.col(0) = mu.weights.cwiseProduct((e + rho * w).matrix());
  X.col(1) = mu.weights.cwiseProduct(state.e);
  const Eigen::MatrixXd KX = kernel.apply(P, P, X);

  ReducedEnergy r;
  r.leading = 4.0 * kPi * scat.a * rho * rho;
  const Eigen::ArrayXd local = p2 * e * e / (1.0 - 2.0 * e) + rho * v * e / (1.0 - 2.0 * e);
  r.bracket_sum = mu.integrate((local - rho * f * e).matrix());
  r.m_sum = mu.integrate(m_p);
  r.g2_term = mu.integrate((rho * rho * g * g / (4.0 * p2)).matrix());
  r.cross_term = 0.5 * mu.integrate(((e + rho * w) * KX.col(0).array()).matrix());
  r.e3_convolution = 0.5 * mu.integrate((e * KX.col(1).array()).matrix());
  r.e3_w_term = 0.5 * rho * rho * mu.integrate((v * w).matrix());
  r.e3_total = r.leading + mu.integrate(local.matrix()) + r.e3_convolution + r.e3_w_term;
  r.e4_total = r.leading + r.bracket_sum + r.g2_term + r.cross_term;
  return r;
}

std::map<std::string, double> error_term_diagnostics(const VariationalState& state, const ScatteringSolution& scat) {
  std::map<std::string, double> out;
  const double rho = state.rho;
  const double rho3 = rho * rho * rho;
  if (state.e.size() == 0 || state.e.cwiseAbs().maxCoeff() == 0.0) {
    for (const char* key : {"depletion_over_rho32", "omega2_per_N_rho2", "omega4_extensive_per_N_rho2",
                            "omega4_nonextensive_over_rho32", "cross_term_per_N_rho2", "reduction_gap_per_N_rho2_log"})
      out[key] = 0.0;
    out["e_sup"] = 0.0;
    return out;
  }
  const EnergyBreakdown full = energy_full(state, scat);
  const ReducedEnergy red = energy_reduced(state, scat);
  Eigen::VectorXd diag(state.e.size());
  for (Eigen::Index i = 0; i < diag.size(); ++i) diag(i) = diagonal_term(scat.v0, state.v_hat_2p(i), state.c(i));
  out["depletion_over_rho32"] = state.depletion_density / std::pow(rho, 1.5);
  out["omega2_per_N_rho2"] = full.Omega2 / rho3;
  out["omega4_extensive_per_N_rho2"] = full.channel("omega4_pairs") / rho3;
  out["omega4_nonextensive_over_rho32"] = 0.5 * state.measure.integrate(diag) / std::pow(rho, 1.5);
  out["cross_term_per_N_rho2"] = red.cross_term / rho3;
  out["reduction_gap_per_N_rho2_log"] = std::abs(full.E_total - red.e4_total) / (rho3 * std::abs(std::log(rho)));
  out["e_sup"] = state.e.cwiseAbs().maxCoeff();
  return out;
}

}  // namespace bose
