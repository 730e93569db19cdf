#include "bose/lattice.hpp"

#include "bose/error.hpp"
#include "bose/parallel.hpp"
#include "bose/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace bose {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPanelRatio = 1.189207115002721;  // 2^(1/4)

// Smooth step: 1 for p <= p_in, 0 for p >= p_out, C-infinity in between.
double switch_function(double p, double p_in, double p_out) {
  if (p <= p_in) return 1.0;
  if (p >= p_out) return 0.0;
  const double t = (p_out - p) / (p_out - p_in);
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

std::vector<double> panel_edges(double p_start, double p_mid, double p_cut, double panel) {
  std::vector<double> edges{p_start};
  double p = p_start;
  while (p * kPanelRatio < p_mid) {
    p *= kPanelRatio;
    edges.push_back(p);
  }
  const double start = std::max(p_start, std::min(p_mid, p_cut));
  if (start > edges.back()) edges.push_back(start);
  const double span = p_cut - edges.back();
  if (span > 0.0) {
    const int n = std::max(1, static_cast<int>(std::ceil(span / panel - 1e-9)));
    const double base = edges.back();
    for (int k = 1; k <= n; ++k) edges.push_back(base + span * k / n);
  }
  return edges;
}

}  // namespace

double LatticeSpec::spacing() const { return 2.0 * kPi / L; }

long LatticeSpec::point_count() const {
  long total = 0;
  for (const auto& s : shells) total += s.multiplicity;
  return total;
}

double default_p_cut(double sigma) { return 8.0 * std::max(1.0 / sigma, 1.0); }

LatticeSpec enumerate_shells(double L, double p_cut) {
  if (!(L > 0.0) || !(p_cut > 0.0)) throw DomainError("enumerate_shells: L and p_cut must be positive");
  const double unit = 2.0 * kPi / L;
  const double radius = p_cut / unit;
  const long n2_max = static_cast<long>(std::floor(radius * radius * (1.0 + 1e-14)));
  if (n2_max < 1) {
    std::ostringstream msg;
    msg << "enumerate_shells: p_cut " << p_cut << " lies below the first shell 2pi/L = " << unit;
    throw DomainError(msg.str());
  }
  const long m = static_cast<long>(std::floor(std::sqrt(static_cast<double>(n2_max))));
  std::vector<long> count(static_cast<std::size_t>(n2_max + 1), 0);
  // one octant with sign multiplicity 2^(number of nonzero components)
  for (long x = 0; x <= m; ++x) {
    for (long y = 0; y <= m; ++y) {
      const long xy = x * x + y * y;
      if (xy > n2_max) break;
      for (long z = 0; z <= m; ++z) {
        const long n2 = xy + z * z;
        if (n2 > n2_max) break;
        const long signs = (x ? 2 : 1) * (y ? 2 : 1) * (z ? 2 : 1);
        count[static_cast<std::size_t>(n2)] += signs;
      }
    }
  }
  LatticeSpec spec;
  spec.L = L;
  spec.p_cut = p_cut;
  for (long n2 = 1; n2 <= n2_max; ++n2) {
    const long mult = count[static_cast<std::size_t>(n2)];
    if (mult == 0) continue;
    const double p2 = unit * unit * static_cast<double>(n2);
    spec.shells.push_back({n2, mult, p2, std::sqrt(p2)});
  }
  return spec;
}

double MomentumMeasure::integrate(const Eigen::VectorXd& values) const {
  if (values.size() != weights.size()) throw DomainError("MomentumMeasure::integrate: size mismatch");
  return pairwise_sum(Eigen::VectorXd(weights.cwiseProduct(values)));
}

std::string to_string(MomentumMeasure::Kind kind) {
  switch (kind) {
    case MomentumMeasure::Kind::shells: return "shells";
    case MomentumMeasure::Kind::continuum: return "continuum";
    case MomentumMeasure::Kind::hybrid: return "hybrid";
  }
  return "unknown";
}

MomentumMeasure shell_measure(const LatticeSpec& lattice) {
  MomentumMeasure m;
  m.kind = MomentumMeasure::Kind::shells;
  m.L = lattice.L;
  m.volume = lattice.volume();
  const auto n = static_cast<Eigen::Index>(lattice.shells.size());
  m.nodes.resize(n);
  m.weights.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& s = lattice.shells[static_cast<std::size_t>(i)];
    m.nodes(i) = s.p;
    m.weights(i) = static_cast<double>(s.multiplicity) / m.volume;
  }
  return m;
}

MomentumMeasure continuum_measure(double p_low, double p_mid, double p_cut, double panel, int order) {
  if (!(p_low > 0.0) || !(p_low < p_cut) || !(panel > 0.0))
    throw DomainError("continuum_measure: need 0 < p_low < p_cut and panel > 0");
  std::vector<double> edges{0.0};
  const auto rest = panel_edges(p_low, p_mid, p_cut, panel);
  edges.insert(edges.end(), rest.begin(), rest.end());
  const QuadratureRule rule = composite_gauss_legendre(edges, order);
  MomentumMeasure m;
  m.kind = MomentumMeasure::Kind::continuum;
  m.nodes = rule.nodes;
  m.weights = rule.weights.cwiseProduct(rule.nodes.cwiseAbs2()) / (2.0 * kPi * kPi);
  return m;
}

MomentumMeasure hybrid_measure(double L, double p_mid, double p_cut, int shell_radius, double panel, int order) {
  if (shell_radius < 4) throw DomainError("hybrid_measure: shell_radius must be at least 4");
  const double unit = 2.0 * kPi / L;
  const double p_out = unit * shell_radius;
  const double p_in = 0.5 * p_out;
  if (!(p_out < p_cut)) throw DomainError("hybrid_measure: box too small for the requested shell radius");
  const LatticeSpec lattice = enumerate_shells(L, p_out);
  const auto rest = panel_edges(p_in, p_mid, p_cut, panel);
  const QuadratureRule rule = composite_gauss_legendre(rest, order);

  std::vector<double> nodes;
  std::vector<double> weights;
  const double volume = L * L * L;
  for (const auto& s : lattice.shells) {
    const double chi = switch_function(s.p, p_in, p_out);
    if (chi == 0.0) continue;
    nodes.push_back(s.p);
    weights.push_back(chi * static_cast<double>(s.multiplicity) / volume);
  }
  for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
    const double p = rule.nodes(i);
    const double chi = 1.0 - switch_function(p, p_in, p_out);
    if (chi == 0.0) continue;
    nodes.push_back(p);
    weights.push_back(chi * rule.weights(i) * p * p / (2.0 * kPi * kPi));
  }
  MomentumMeasure m;
  m.kind = MomentumMeasure::Kind::hybrid;
  m.L = L;
  m.volume = volume;
  m.nodes = Eigen::Map<Eigen::VectorXd>(nodes.data(), static_cast<Eigen::Index>(nodes.size()));
  m.weights = Eigen::Map<Eigen::VectorXd>(weights.data(), static_cast<Eigen::Index>(weights.size()));
  return m;
}

double riemann_sum(const std::function<double(double)>& F, const LatticeSpec& lattice) {
  std::vector<double> terms(lattice.shells.size());
  parallel_for(terms.size(), [&](std::size_t i) {
    const auto& s = lattice.shells[i];
    terms[i] = static_cast<double>(s.multiplicity) * F(s.p2);
  });
  return pairwise_sum(terms) / lattice.volume();
}

Extrapolation richardson(const std::vector<double>& values, double ratio, const std::vector<int>& orders) {
  if (values.size() != orders.size() + 1 || values.empty())
    throw DomainError("richardson: need one more value than error orders");
  if (!(ratio > 1.0)) throw DomainError("richardson: refinement ratio must exceed 1");
  Extrapolation out;
  out.raw = values;
  std::vector<double> level = values;
  for (int order : orders) {
    const double f = std::pow(ratio, order);
    std::vector<double> next(level.size() - 1);
    for (std::size_t i = 0; i + 1 < level.size(); ++i) next[i] = (f * level[i + 1] - level[i]) / (f - 1.0);
    out.error_estimate = std::abs(next.back() - level.back());
    level = std::move(next);
  }
  out.value = level.front();
  return out;
}

RiemannLimit riemann_limit(const std::function<double(double)>& F, double L0, double p_cut,
                           const RiemannOptions& options) {
  if (options.tail_estimate > options.tail_tolerance) {
    std::ostringstream msg;
    msg << "riemann_limit: cutoff tail " << options.tail_estimate << " exceeds tolerance " << options.tail_tolerance;
    throw NumericError(msg.str(), options.tail_estimate);
  }
  if (static_cast<int>(options.orders.size()) != options.refinements)
    throw DomainError("riemann_limit: need one error order per refinement");
  RiemannLimit out;
  std::vector<double> sums;
  for (int k = 0; k <= options.refinements; ++k) {
    const double L = L0 * std::pow(2.0, k);
    out.box_sides.push_back(L);
    sums.push_back(riemann_sum(F, enumerate_shells(L, p_cut)));
  }
  out.value = sums.front();
  out.extrapolated = richardson(sums, 2.0, options.orders);
  // a convergent sequence has shrinking increments
  for (std::size_t k = 2; k < sums.size(); ++k) {
    const double prev = std::abs(sums[k - 1] - sums[k - 2]);
    const double curr = std::abs(sums[k] - sums[k - 1]);
    if (curr >= prev && curr > 1e-14 * std::abs(sums[k])) out.diverging = true;
  }
  return out;
}

}  // namespace bose
