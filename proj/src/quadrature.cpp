#include "fraclyap/quadrature.hpp"

#include <cmath>

namespace fraclyap {

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  if (!(std::isfinite(a) && std::isfinite(b) && a < b))
    throw std::invalid_argument("gauss_legendre: requires finite a < b");

  QuadratureRule rule;
  rule.kind = RuleKind::smooth;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));

  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const int m = (n + 1) / 2;

  for (int i = 0; i < m; ++i) {
    // i-th largest root of P_n, refined by Newton with the analytic P_n'.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-15) break;
    }
    // one clean evaluation of P_n' at the converged root
    {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = mid - half * x;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = mid + half * x;
    rule.weights[static_cast<std::size_t>(i)] = half * w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = half * w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = mid;  // kill the -0*half residue
  return rule;
}

namespace detail {

namespace {

struct DeTables {
  std::vector<std::vector<DeNode>> levels;

  DeTables() {
    levels.resize(kDeMaxLevel + 1);
    for (int m = 0; m <= kDeMaxLevel; ++m) {
      const double h = std::ldexp(1.0, -m);
      const int step = (m == 0) ? 1 : 2;
      for (int k = 1;; k += step) {
        const double t = k * h;
        const double u = 0.5 * M_PI * std::sinh(t);
        const double e = std::exp(-2.0 * u);
        const double tau = e / (1.0 + e);
        const double sech = 2.0 / (std::exp(u) + std::exp(-u));
        const double w = 0.5 * M_PI * std::cosh(t) * sech * sech;
        if (tau == 0.0 || w == 0.0 || !std::isfinite(w)) break;
        levels[static_cast<std::size_t>(m)].push_back({tau, w});
      }
    }
  }
};

}  // namespace

std::span<const DeNode> de_level_nodes(int level) {
  static const DeTables tables;
  return tables.levels.at(static_cast<std::size_t>(level));
}

}  // namespace detail

}  // namespace fraclyap
