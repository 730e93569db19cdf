#include "bose/quadrature.hpp"

#include "bose/error.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

namespace bose {
namespace {

QuadratureRule compute_gauss_legendre(int n) {
  QuadratureRule rule{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) {
        p0 = 1.0;
        p1 = x;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes(i) = -x;
    rule.nodes(n - 1 - i) = x;
    rule.weights(i) = w;
    rule.weights(n - 1 - i) = w;
  }
  if (n % 2 == 1) rule.nodes(n / 2) = 0.0;
  return rule;
}

// Kronrod 15-point abscissae and weights, Gauss 7-point weights.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
};

Panel kronrod(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod_sum = fc * kWgk[7];
  double gauss_sum = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod_sum += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss_sum += kWg[j / 2] * (f1 + f2);
  }
  return {a, b, kronrod_sum * half, std::abs((kronrod_sum - gauss_sum) * half)};
}

}  // namespace

const QuadratureRule& gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, QuadratureRule> cache;
  if (n < 1) throw DomainError("gauss_legendre: need at least one node");
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

QuadratureRule gauss_legendre(int n, double a, double b) {
  const QuadratureRule& ref = gauss_legendre(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  return {(mid + half * ref.nodes.array()).matrix(), (half * ref.weights.array()).matrix()};
}

QuadratureRule composite_gauss_legendre(std::span<const double> edges, int n) {
  if (edges.size() < 2) throw DomainError("composite_gauss_legendre: need at least two edges");
  const auto panels = static_cast<Eigen::Index>(edges.size() - 1);
  QuadratureRule out{Eigen::VectorXd(panels * n), Eigen::VectorXd(panels * n)};
  for (Eigen::Index k = 0; k < panels; ++k) {
    if (!(edges[k + 1] > edges[k])) throw DomainError("composite_gauss_legendre: edges must increase");
    const QuadratureRule panel = gauss_legendre(n, edges[k], edges[k + 1]);
    out.nodes.segment(k * n, n) = panel.nodes;
    out.weights.segment(k * n, n) = panel.weights;
  }
  return out;
}

Integral integrate_adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol,
                            double rel_tol, int max_intervals) {
  if (a == b) return {};
  std::vector<Panel> panels{kronrod(f, a, b)};
  auto totals = [&] {
    std::vector<double> values, errors;
    values.reserve(panels.size());
    errors.reserve(panels.size());
    for (const Panel& p : panels) {
      values.push_back(p.value);
      errors.push_back(p.error);
    }
    return std::pair{pairwise_sum(values), pairwise_sum(errors)};
  };
  auto [value, error] = totals();
  while (error > std::max(abs_tol, rel_tol * std::abs(value))) {
    if (static_cast<int>(panels.size()) >= max_intervals) {
      std::ostringstream msg;
      msg << "adaptive quadrature did not converge on [" << a << ", " << b << "]: estimate " << value
          << " +- " << error;
      throw NumericError(msg.str(), error);
    }
    auto worst = std::max_element(panels.begin(), panels.end(),
                                  [](const Panel& x, const Panel& y) { return x.error < y.error; });
    const Panel split = *worst;
    const double mid = 0.5 * (split.a + split.b);
    *worst = kronrod(f, split.a, mid);
    panels.push_back(kronrod(f, mid, split.b));
    std::tie(value, error) = totals();
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  std::tie(value, error) = totals();
  return {value, error, static_cast<int>(panels.size())};
}

Integral integrate_adaptive(const std::function<double(double)>& f, std::span<const double> breakpoints,
                            double abs_tol, double rel_tol, int max_intervals) {
  Integral total;
  std::vector<double> values;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const Integral piece = integrate_adaptive(f, breakpoints[i], breakpoints[i + 1], abs_tol, rel_tol, max_intervals);
    values.push_back(piece.value);
    total.error += piece.error;
    total.intervals += piece.intervals;
  }
  total.value = pairwise_sum(values);
  return total;
}

double pairwise_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values.subspan(0, half)) + pairwise_sum(values.subspan(half));
}

}  // namespace bose
