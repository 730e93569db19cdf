#include "bose/fock_oracle.hpp"

#include "bose/potential.hpp"
#include "bose/variational.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

namespace bose::fock {
namespace {

constexpr double kPoissonTail = 1e-17;

// a_k on the axis of mode k: out[n] = sqrt(n+1) in[n+1]
void annihilate(const TruncatedFockState& s, int k, const Eigen::VectorXd& in, Eigen::VectorXd& out) {
  const Eigen::Index stride = s.strides[static_cast<std::size_t>(k)];
  const Eigen::Index dim = s.dims[static_cast<std::size_t>(k)];
  const Eigen::Index block = stride * dim;
  out.resize(in.size());
  const double* src = in.data();
  double* dst = out.data();
  for (Eigen::Index base = 0; base < in.size(); base += block) {
    for (Eigen::Index n = 0; n + 1 < dim; ++n) {
      const double f = std::sqrt(static_cast<double>(n + 1));
      const double* from = src + base + (n + 1) * stride;
      double* to = dst + base + n * stride;
      for (Eigen::Index i = 0; i < stride; ++i) to[i] = f * from[i];
    }
    std::fill(dst + base + (dim - 1) * stride, dst + base + block, 0.0);
  }
}

// a+_k: out[n] = sqrt(n) in[n-1]; whatever sits at the top level is lost
void create(const TruncatedFockState& s, int k, const Eigen::VectorXd& in, Eigen::VectorXd& out) {
  const Eigen::Index stride = s.strides[static_cast<std::size_t>(k)];
  const Eigen::Index dim = s.dims[static_cast<std::size_t>(k)];
  const Eigen::Index block = stride * dim;
  out.resize(in.size());
  const double* src = in.data();
  double* dst = out.data();
  for (Eigen::Index base = 0; base < in.size(); base += block) {
    std::fill(dst + base, dst + base + stride, 0.0);
    for (Eigen::Index n = 1; n < dim; ++n) {
      const double f = std::sqrt(static_cast<double>(n));
      const double* from = src + base + (n - 1) * stride;
      double* to = dst + base + n * stride;
      for (Eigen::Index i = 0; i < stride; ++i) to[i] = f * from[i];
    }
  }
}

// applies ops right to left to src; result in out, tmp is scratch
void apply_into(const TruncatedFockState& state, const std::vector<LadderOp>& ops, const Eigen::VectorXd& src,
                Eigen::VectorXd& out, Eigen::VectorXd& tmp) {
  if (ops.empty()) {
    out = src;
    return;
  }
  const Eigen::VectorXd* from = &src;
  // ping-pong so the last op lands in out
  bool to_out = ops.size() % 2 == 1;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    Eigen::VectorXd& dst = to_out ? out : tmp;
    if (it->creation) {
      create(state, it->mode, *from, dst);
    } else {
      annihilate(state, it->mode, *from, dst);
    }
    from = &dst;
    to_out = !to_out;
  }
}

std::array<long long, 3> key_of(const Eigen::Vector3d& p) {
  return {std::llround(p.x() * 1e9), std::llround(p.y() * 1e9), std::llround(p.z() * 1e9)};
}

}  // namespace

int TruncatedFockState::mode_index(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return static_cast<int>(i);
  }
  throw ConfigError("fock: operator on unlisted mode '" + label + "'");
}

TruncatedFockState build_state(const std::vector<Eigen::Vector3d>& pairs, const std::vector<double>& c,
                               double sqrtN0, int n_max, int pad, std::int64_t capacity) {
  if (pairs.size() != c.size()) throw ConfigError("fock: one c per pair required");
  if (n_max < 1) throw DomainError("fock: n_max must be >= 1");
  if (pad < 0) throw DomainError("fock: pad must be >= 0");
  if (!(sqrtN0 >= 0.0)) throw DomainError("fock: sqrtN0 must be >= 0");
  TruncatedFockState s;
  s.n_max = n_max;
  s.pad = pad;
  s.sqrtN0 = sqrtN0;
  s.modes.push_back(Eigen::Vector3d::Zero());
  s.labels.emplace_back("0");
  s.partner.push_back(0);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!(std::abs(c[i]) < 1.0)) throw DomainError("fock: |c| must be < 1");
    if (pairs[i].norm() == 0.0) throw ConfigError("fock: pair momentum must be nonzero");
    const int idx = static_cast<int>(s.modes.size());
    s.modes.push_back(pairs[i]);
    s.modes.push_back(-pairs[i]);
    s.labels.push_back("k" + std::to_string(i + 1));
    s.labels.push_back("-k" + std::to_string(i + 1));
    s.partner.push_back(idx + 1);
    s.partner.push_back(idx);
  }
  {
    std::map<std::array<long long, 3>, int> seen;
    for (std::size_t i = 0; i < s.modes.size(); ++i) {
      if (!seen.emplace(key_of(s.modes[i]), 0).second) throw ConfigError("fock: repeated mode momentum");
    }
  }
  const auto m = s.modes.size();
  s.c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    s.c(static_cast<Eigen::Index>(1 + 2 * i)) = c[i];
    s.c(static_cast<Eigen::Index>(2 + 2 * i)) = c[i];
  }

  // condensate cutoff: Poisson(N0) tail below kPoissonTail
  const double N0 = sqrtN0 * sqrtN0;
  int cut = n_max;
  double pois_tail = 0.0;
  if (N0 > 0.0) {
    // tail after n is below term_n * N0 / (n + 1 - N0) once n + 1 > N0
    double term = std::exp(-N0);
    int n = 0;
    while (true) {
      ++n;
      term *= N0 / n;
      if (n + 1 > N0) {
        pois_tail = term * N0 / (n + 1 - N0);
        if (n >= n_max && pois_tail < kPoissonTail) break;
      }
      if (n > 10000) throw DomainError("fock: condensate too large");
    }
    cut = n;
  }
  s.condensate_cutoff = cut;

  s.dims.assign(m, n_max + 1 + pad);
  s.dims[0] = cut + 1 + pad;
  s.strides.assign(m, 1);
  double total = 1.0;
  for (auto d : s.dims) total *= static_cast<double>(d);
  if (total > static_cast<double>(capacity)) {
    std::ostringstream msg;
    msg << "fock: tensor of " << total << " entries exceeds capacity " << capacity;
    throw DomainError(msg.str());
  }
  for (int k = static_cast<int>(m) - 2; k >= 0; --k) {
    s.strides[static_cast<std::size_t>(k)] = s.strides[static_cast<std::size_t>(k) + 1] * s.dims[static_cast<std::size_t>(k) + 1];
  }
  s.amplitudes = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(total));

  std::vector<double> cond(static_cast<std::size_t>(cut) + 1);
  cond[0] = 1.0;
  for (int n = 1; n <= cut; ++n) cond[static_cast<std::size_t>(n)] = cond[static_cast<std::size_t>(n) - 1] * sqrtN0 / std::sqrt(n);

  // odometer over (n_0, n_pair_1, ..., n_pair_P); each pair has n_k = n_-k
  const std::size_t P = pairs.size();
  std::vector<int> occ(P, 0);
  for (int n0 = 0; n0 <= cut; ++n0) {
    std::fill(occ.begin(), occ.end(), 0);
    while (true) {
      Eigen::Index idx = n0 * s.strides[0];
      double amp = cond[static_cast<std::size_t>(n0)];
      for (std::size_t i = 0; i < P; ++i) {
        idx += occ[i] * (s.strides[1 + 2 * i] + s.strides[2 + 2 * i]);
        amp *= std::pow(c[i], occ[i]);
      }
      s.amplitudes(idx) = amp;
      std::size_t j = 0;
      while (j < P && ++occ[j] > n_max) occ[j++] = 0;
      if (j == P) break;
    }
  }

  double tail = pois_tail;
  for (double ci : c) tail += std::pow(ci * ci, n_max + 1) / (1.0 - ci * ci);
  s.tail_bound = tail;
  return s;
}

std::vector<LadderOp> parse_operator_string(const TruncatedFockState& state, const std::string& text) {
  std::vector<LadderOp> ops;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    LadderOp op;
    std::size_t open = 0;
    if (tok.rfind("a+[", 0) == 0) {
      op.creation = true;
      open = 2;
    } else if (tok.rfind("a[", 0) == 0) {
      open = 1;
    } else {
      throw ConfigError("fock: bad operator token '" + tok + "'");
    }
    if (tok.back() != ']') throw ConfigError("fock: bad operator token '" + tok + "'");
    op.mode = state.mode_index(tok.substr(open + 1, tok.size() - open - 2));
    ops.push_back(op);
  }
  if (ops.empty()) throw ConfigError("fock: empty operator string");
  return ops;
}

Eigen::VectorXd apply(const TruncatedFockState& state, const std::vector<LadderOp>& ops, Eigen::VectorXd v) {
  Eigen::VectorXd out;
  Eigen::VectorXd tmp;
  apply_into(state, ops, v, out, tmp);
  return out;
}

double expect_moment(const TruncatedFockState& state, const std::vector<LadderOp>& ops) {
  std::size_t lead = 0;
  while (lead < ops.size() && ops[lead].creation) ++lead;
  std::vector<LadderOp> bra_ops;
  for (std::size_t i = 0; i < lead; ++i) bra_ops.push_back({false, ops[i].mode});
  const std::vector<LadderOp> ket_ops(ops.begin() + static_cast<std::ptrdiff_t>(lead), ops.end());
  // creation operators acting on the ket may meet occupied levels; count the
  // worst case per mode against the padding
  std::vector<int> climb(state.modes.size(), 0);
  std::vector<int> peak(state.modes.size(), 0);
  for (auto it = ket_ops.rbegin(); it != ket_ops.rend(); ++it) {
    auto& h = climb[static_cast<std::size_t>(it->mode)];
    h += it->creation ? 1 : -1;
    peak[static_cast<std::size_t>(it->mode)] = std::max(peak[static_cast<std::size_t>(it->mode)], h);
  }
  for (int p : peak) {
    if (p > state.pad) throw DomainError("fock: operator string needs pad >= " + std::to_string(p));
  }
  // buffers reused across calls; the tensors are several MB each
  thread_local Eigen::VectorXd bra;
  thread_local Eigen::VectorXd ket;
  thread_local Eigen::VectorXd tmp;
  const Eigen::VectorXd* b = &state.amplitudes;
  if (!bra_ops.empty()) {
    apply_into(state, bra_ops, state.amplitudes, bra, tmp);
    b = &bra;
  }
  const Eigen::VectorXd* k = &state.amplitudes;
  if (!ket_ops.empty()) {
    apply_into(state, ket_ops, state.amplitudes, ket, tmp);
    k = &ket;
  }
  return b->dot(*k) / state.norm2();
}

double expect_moment(const TruncatedFockState& state, const std::string& operator_string) {
  return expect_moment(state, parse_operator_string(state, operator_string));
}

HamiltonianExpectation hamiltonian_expectation(const TruncatedFockState& state, double volume,
                                               const std::function<double(double)>& v_hat) {
  if (!(volume > 0.0)) throw DomainError("fock: volume must be > 0");
  const int m = static_cast<int>(state.modes.size());
  std::map<std::array<long long, 3>, int> index;
  for (int i = 0; i < m; ++i) index[key_of(state.modes[static_cast<std::size_t>(i)])] = i;
  for (int i = 0; i < m; ++i) {
    if (!index.count(key_of(-state.modes[static_cast<std::size_t>(i)]))) {
      throw ConfigError("fock: mode set not closed under p -> -p");
    }
  }
  const double norm2 = state.norm2();
  HamiltonianExpectation h;
  Eigen::VectorXd phi;
  for (int i = 1; i < m; ++i) {
    annihilate(state, i, state.amplitudes, phi);
    h.kinetic += state.modes[static_cast<std::size_t>(i)].squaredNorm() * phi.squaredNorm();
  }
  h.kinetic /= norm2;

  // ordered pairs grouped by total momentum; <a_q a_p Psi, a_r a_s Psi>
  std::map<std::array<long long, 3>, std::vector<std::pair<int, int>>> groups;
  for (int r = 0; r < m; ++r) {
    for (int s = r; s < m; ++s) {
      groups[key_of(state.modes[static_cast<std::size_t>(r)] + state.modes[static_cast<std::size_t>(s)])].emplace_back(r, s);
    }
  }
  Eigen::VectorXd tmp;
  for (const auto& [key, list] : groups) {
    const auto g = list.size();
    std::vector<Eigen::VectorXd> vec(g);
    for (std::size_t j = 0; j < g; ++j) {
      annihilate(state, list[j].second, state.amplitudes, tmp);
      annihilate(state, list[j].first, tmp, vec[j]);
    }
    for (std::size_t a = 0; a < g; ++a) {
      for (std::size_t b = 0; b < g; ++b) {
        const double overlap = vec[a].dot(vec[b]) / norm2;
        const auto [p0, q0] = list[a];
        const auto [r0, s0] = list[b];
        // expand the unordered pairs back into ordered (p,q) and (r,s)
        const std::array<std::pair<int, int>, 2> pq{{{p0, q0}, {q0, p0}}};
        const std::array<std::pair<int, int>, 2> rs{{{r0, s0}, {s0, r0}}};
        const int npq = p0 == q0 ? 1 : 2;
        const int nrs = r0 == s0 ? 1 : 2;
        for (int x = 0; x < npq; ++x) {
          for (int y = 0; y < nrs; ++y) {
            const auto [p, q] = pq[static_cast<std::size_t>(x)];
            const auto [r, s] = rs[static_cast<std::size_t>(y)];
            const double u = (state.modes[static_cast<std::size_t>(p)] - state.modes[static_cast<std::size_t>(r)]).norm();
            const double term = v_hat(u) * overlap / (2.0 * volume);
            const int zeros = (p == 0) + (q == 0) + (r == 0) + (s == 0);
            if (zeros == 4) {
              h.E0 += term;
            } else if (zeros == 2) {
              h.E2 += term;
            } else if (zeros == 0) {
              h.E4 += term;
            } else {
              h.odd += term;
            }
          }
        }
      }
    }
  }
  h.total = h.kinetic + h.E0 + h.E2 + h.E4 + h.odd;
  return h;
}

std::vector<std::string> OracleReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.pass) out.push_back(c.name);
  }
  return out;
}

std::vector<std::string> oracle_formula_names() {
  return {"pair_vacuum_overlap", "norm", "condensate_occupation", "condensate_quartic", "occupation",
          "anomalous", "anomalous_conjugate", "pair_transfer", "pair_density", "same_mode_quartic",
          "vanishing_rule", "cross_pair", "two_mode_density", "total_number", "number_variance",
          "hermitian_sum", "hamiltonian_E0", "hamiltonian_E2", "hamiltonian_E4", "hamiltonian_odd",
          "hamiltonian_total"};
}

OracleReport run_oracle(const OracleConfig& cfg) {
  const auto names = oracle_formula_names();
  if (!cfg.fault.empty() && std::find(names.begin(), names.end(), cfg.fault) == names.end()) {
    throw ConfigError("oracle: unknown formula '" + cfg.fault + "' for fault injection");
  }
  if (cfg.n_max < 1 || cfg.n_max > 12) throw ConfigError("oracle: n_max must lie in [1, 12]");
  if (!(cfg.c_bound >= 0.0 && cfg.c_bound <= 0.5)) throw ConfigError("oracle: c_bound must lie in [0, 0.5]");
  if (!(cfg.sqrtN0_bound >= 0.0 && cfg.sqrtN0_bound <= 2.0)) throw ConfigError("oracle: sqrtN0_bound must lie in [0, 2]");
  if (!(cfg.L > 0.0)) throw ConfigError("oracle: L must be > 0");
  if (cfg.k1.isZero() || cfg.k2.isZero() || cfg.k1 == cfg.k2 || cfg.k1 == -cfg.k2) {
    throw ConfigError("oracle: k1, k2 must be nonzero with k2 != +-k1");
  }
  const auto t0 = std::chrono::steady_clock::now();
  const PotentialTransform vt(gaussian_potential(cfg.sigma, cfg.lambda));
  const auto v_hat = [&vt](double p) { return vt(p); };
  const double spacing = 2.0 * std::numbers::pi / cfg.L;
  const Eigen::Vector3d k1 = spacing * cfg.k1.cast<double>();
  const Eigen::Vector3d k2 = spacing * cfg.k2.cast<double>();
  const double volume = cfg.L * cfg.L * cfg.L;

  OracleReport report;
  std::map<std::string, std::size_t> slot;
  auto record = [&](const std::string& name, const std::string& expr, double brute, double analytic, double floor,
                    double tail) {
    if (name == cfg.fault) analytic = -analytic;
    const double scale = std::abs(analytic);
    const double err = scale > 0.0 ? std::abs(brute - analytic) / scale : std::abs(brute - analytic);
    const double tol = std::max(floor, 10.0 * tail);
    auto it = slot.find(name);
    if (it == slot.end()) {
      it = slot.emplace(name, report.checks.size()).first;
      OracleCheck c;
      c.name = name;
      report.checks.push_back(c);
    }
    OracleCheck& c = report.checks[it->second];
    ++c.draws;
    const bool ok = err <= tol;
    // keep the draw closest to failing
    const bool worse = c.draws == 1 || err / tol > c.error / c.tolerance;
    if (worse) {
      c.expression = expr;
      c.brute = brute;
      c.analytic = analytic;
      c.error = err;
      c.tolerance = tol;
      c.tail_bound = tail;
    }
    c.pass = c.pass && ok;
  };

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> draw_c(-cfg.c_bound, cfg.c_bound);
  std::uniform_real_distribution<double> draw_n(0.0, cfg.sqrtN0_bound);
  const double moment_floor = cfg.moment_tolerance;
  const double energy_floor = cfg.energy_tolerance;
  const int draws = std::max(cfg.moment_draws, cfg.hamiltonian_draws);
  for (int d = 0; d < draws; ++d) {
    const double c1 = cfg.zero_pairs ? 0.0 : draw_c(rng);
    const double c2 = cfg.zero_pairs ? 0.0 : draw_c(rng);
    const double sq = draw_n(rng);
    const double N0 = sq * sq;
    const auto st = build_state({k1, k2}, {c1, c2}, sq, cfg.n_max);
    const double tail = st.tail_bound;
    report.max_tail_bound = std::max(report.max_tail_bound, tail);

    if (d < cfg.moment_draws) {
      {
        const auto single = build_state({k1}, {c1}, 0.0, cfg.n_max);
        record("pair_vacuum_overlap", "<0|exp(c a a) exp(c a+ a+)|0>", single.norm2(), 1.0 / (1.0 - c1 * c1),
               moment_floor, single.tail_bound);
      }
      record("norm", "<Psi,Psi>", st.norm2(), std::exp(N0) / ((1.0 - c1 * c1) * (1.0 - c2 * c2)), moment_floor,
             tail);
      record("condensate_occupation", "a+[0] a[0]", expect_moment(st, "a+[0] a[0]"), N0, moment_floor, tail);
      record("condensate_quartic", "a+[0] a+[0] a[0] a[0]", expect_moment(st, "a+[0] a+[0] a[0] a[0]"), N0 * N0,
             moment_floor, tail);
      const std::array<std::pair<std::string, double>, 4> ms{
          {{"k1", c1}, {"-k1", c1}, {"k2", c2}, {"-k2", c2}}};
      for (const auto& [lab, c] : ms) {
        const std::string mm = lab[0] == '-' ? lab.substr(1) : "-" + lab;
        const double d1 = 1.0 - c * c;
        const std::string am = "a[" + lab + "]";
        const std::string ap = "a+[" + lab + "]";
        const std::string bm = "a[" + mm + "]";
        const std::string bp = "a+[" + mm + "]";
        auto moment = [&](const std::string& name, const std::string& expr, double analytic) {
          record(name, expr, expect_moment(st, expr), analytic, moment_floor, tail);
        };
        moment("occupation", ap + " " + am, c * c / d1);
        moment("anomalous", am + " " + bm, c / d1);
        moment("anomalous_conjugate", ap + " " + bp, c / d1);
        moment("pair_transfer", ap + " " + ap + " " + bm + " " + bm, 0.0);
        moment("pair_density", ap + " " + bp + " " + am + " " + bm, c * c * (1.0 + c * c) / (d1 * d1));
        moment("same_mode_quartic", ap + " " + ap + " " + am + " " + am, 2.0 * c * c * c * c / (d1 * d1));
      }
      // strings with an unmatched a_m (no a+_m, no a_-m): A a_m B
      for (const char* expr : {"a[k1]", "a+[k2] a[k1]", "a+[0] a[0] a[k1]", "a[k1] a[k2]", "a+[-k2] a[k1] a[k2]",
                               "a+[0] a[-k2] a[0]", "a+[k1] a+[k1] a[-k1]"}) {
        record("vanishing_rule", expr, expect_moment(st, expr), 0.0, moment_floor, tail);
      }
      const double t1 = c1 / (1.0 - c1 * c1);
      const double t2 = c2 / (1.0 - c2 * c2);
      const double n1 = c1 * c1 / (1.0 - c1 * c1);
      const double n2 = c2 * c2 / (1.0 - c2 * c2);
      record("cross_pair", "a+[k1] a+[-k1] a[k2] a[-k2]", expect_moment(st, "a+[k1] a+[-k1] a[k2] a[-k2]"),
             t1 * t2, moment_floor, tail);
      record("two_mode_density", "a+[k1] a+[k2] a[k1] a[k2]", expect_moment(st, "a+[k1] a+[k2] a[k1] a[k2]"),
             n1 * n2, moment_floor, tail);

      // number operator is diagonal in the occupation basis
      Eigen::ArrayXd count = Eigen::ArrayXd::Zero(st.amplitudes.size());
      for (std::size_t k = 0; k < st.modes.size(); ++k) {
        const Eigen::Index stride = st.strides[k];
        const Eigen::Index dim = st.dims[k];
        for (Eigen::Index base = 0; base < count.size(); base += stride * dim) {
          for (Eigen::Index n = 1; n < dim; ++n) count.segment(base + n * stride, stride) += static_cast<double>(n);
        }
      }
      const Eigen::ArrayXd prob = st.amplitudes.array().square() / st.norm2();
      const double mean = (prob * count).sum();
      const double var = (prob * (count - mean).square()).sum();
      record("total_number", "sum a+[p] a[p]", mean, N0 + 2.0 * (n1 + n2), moment_floor, tail);
      const double var_exact = N0 + 4.0 * (n1 * (1.0 + n1) + n2 * (1.0 + n2));
      record("number_variance", "<N^2> - <N>^2", var, var_exact, moment_floor, tail);
      if (var_exact > 0.0 && !(var > 0.0)) record("number_variance", "positivity", -1.0, 1.0, moment_floor, 0.0);

      const double o = expect_moment(st, "a+[k2] a[k1] a[0]");
      const double od = expect_moment(st, "a+[0] a+[k1] a[k2]");
      record("hermitian_sum", "O + O+ with O = a+[k1] a+[-k1]",
             expect_moment(st, "a+[k1] a+[-k1]") + expect_moment(st, "a[-k1] a[k1]"),
             2.0 * expect_moment(st, "a+[k1] a+[-k1]"), moment_floor, tail);
      record("hermitian_sum", "O + O+ with O = a+[k2] a[k1] a[0]", o + od, 2.0 * o, moment_floor, tail);
    }

    if (d < cfg.hamiltonian_draws) {
      const auto brute = hamiltonian_expectation(st, volume, v_hat);
      ModeSet ms;
      ms.momenta = {k1, -k1, k2, -k2};
      ms.c = Eigen::Vector4d(c1, c1, c2, c2);
      ms.N0 = N0;
      ms.volume = volume;
      const auto an = energy_modes(ms, v_hat);
      const double v0 = v_hat(0.0);
      double e2 = 0.0;
      for (Eigen::Index i = 0; i < 4; ++i) {
        const double c = ms.c(i);
        const double vp = v_hat(ms.momenta[static_cast<std::size_t>(i)].norm());
        e2 += N0 * vp * c / (1.0 - c * c) + (vp + v0) * N0 * c * c / (1.0 - c * c);
      }
      e2 /= volume;
      const double e4 = (an.channel("cross") + an.channel("omega4_pairs") + an.channel("omega4_diagonal")) * volume;
      record("hamiltonian_E0", "V0 N0^2 / 2|Lambda|", brute.E0, v0 * N0 * N0 / (2.0 * volume), energy_floor, tail);
      record("hamiltonian_E2", "quadratic channel", brute.E2, e2, energy_floor, tail);
      record("hamiltonian_E4", "quartic channel", brute.E4, e4, energy_floor, tail);
      record("hamiltonian_odd", "one or three zero momenta", brute.odd, 0.0, energy_floor, tail);
      record("hamiltonian_total", "<H> vs E_M + Omega2 + Omega4", brute.total, an.E_total * volume, energy_floor,
             tail);
    }
  }
  for (const auto& c : report.checks) report.all_pass = report.all_pass && c.pass;
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace bose::fock
