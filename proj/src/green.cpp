#include "fraclyap/green.hpp"

#include <algorithm>
#include <cmath>

#include "fraclyap/fracops.hpp"
#include "fraclyap/quadrature.hpp"
#include "fraclyap/specfun.hpp"

namespace fraclyap {

double green_diag(double r, const FracOrders& orders, const Interval& iv) {
  if (!iv.contains(r)) throw std::domain_error("green_diag: r outside [a,b]");
  const double s = orders.sum() - 1.0;
  return std::pow(r - iv.a, s) / (s * gamma_fn(orders.alpha) * gamma_fn(orders.beta));
}

double green_sup(const FracOrders& orders, const Interval& iv) {
  return green_diag(iv.b, orders, iv);
}

double green_eval(double t, double r, const FracOrders& orders, const Interval& iv,
                  double tol) {
  if (!iv.contains(t) || !iv.contains(r))
    throw std::domain_error("green_eval: point outside [a,b]^2");
  if (std::abs(t - r) <= 1e-9 * iv.width()) return green_diag(std::min(t, r), orders, iv);

  // r < t: u = r-s gives int_0^(r-a) u^(alpha-1) (u + (t-r))^(beta-1) du;
  // t < r: u = t-s swaps the roles of the exponents.
  double rho, d, p_sing, p_smooth;
  if (r < t) {
    rho = r - iv.a;
    d = t - r;
    p_sing = orders.alpha;
    p_smooth = orders.beta;
  } else {
    rho = t - iv.a;
    d = r - t;
    p_sing = orders.beta;
    p_smooth = orders.alpha;
  }
  if (rho == 0.0) return 0.0;
  const double value = de_integrate(
      [&](double u) { return std::pow(u, p_sing - 1.0) * std::pow(u + d, p_smooth - 1.0); },
      0.0, rho, tol);
  return value / (gamma_fn(orders.alpha) * gamma_fn(orders.beta));
}

namespace {

// Composite Gauss-Legendre over [lo,hi] with panels graded geometrically
// toward whichever ends carry an algebraic singularity of the derivative.
template <class F>
double graded_gauss(F&& f, double lo, double hi, int n, bool grade_lo, bool grade_hi) {
  if (!(hi > lo)) return 0.0;
  constexpr double kRatio = 0.2;
  constexpr int kLevels = 14;  // kRatio^14 ~ 1.6e-10 of the segment width

  const QuadratureRule base = gauss_legendre(n, 0.0, 1.0);
  auto panel = [&](double p_lo, double p_hi) {
    double acc = 0.0;
    const double w = p_hi - p_lo;
    for (std::size_t i = 0; i < base.size(); ++i)
      acc += w * base.weights[i] * f(p_lo + w * base.nodes[i]);
    return acc;
  };

  std::vector<double> edges;
  edges.push_back(lo);
  if (grade_lo && grade_hi) {
    const double mid = 0.5 * (lo + hi);
    for (int k = kLevels; k >= 1; --k) edges.push_back(lo + (mid - lo) * std::pow(kRatio, k));
    edges.push_back(mid);
    for (int k = 1; k <= kLevels; ++k) edges.push_back(hi - (hi - mid) * std::pow(kRatio, k));
  } else if (grade_hi) {
    for (int k = 1; k <= kLevels; ++k) edges.push_back(hi - (hi - lo) * std::pow(kRatio, k));
  } else if (grade_lo) {
    for (int k = kLevels; k >= 1; --k) edges.push_back(lo + (hi - lo) * std::pow(kRatio, k));
  }
  edges.push_back(hi);

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) total += panel(edges[i], edges[i + 1]);
  return total;
}

}  // namespace

double green_apply_kernel(const std::function<double(double)>& f, double t,
                          const ProblemSpec& spec, int n, double tol) {
  if (!spec.interval.contains(t)) throw std::domain_error("green_apply_kernel: t outside [a,b]");
  if (n < 1) throw std::invalid_argument("green_apply_kernel: n must be >= 1");
  const auto g = [&](double r) { return green_eval(t, r, spec.orders, spec.interval, tol) * f(r); };
  // dG/dr blows up at r = t (diagonal kink) and at r = a.
  double acc = graded_gauss(g, spec.interval.a, t, n, true, true);
  acc += graded_gauss(g, t, spec.interval.b, n, true, false);
  return acc;
}

double green_apply_sequential(const std::function<double(double)>& f, double t,
                              const ProblemSpec& spec, double tol) {
  if (!spec.interval.contains(t)) throw std::domain_error("green_apply_sequential: t outside [a,b]");
  const double inner_tol = std::max(1e-12, tol * 1e-2);
  const FracOrder alpha(spec.orders.alpha);
  const FracOrder beta(spec.orders.beta);
  const RealFn inner = [&](double s) {
    return rl_integral_right(f, alpha, s, spec.interval.b, inner_tol);
  };
  return rl_integral_left(inner, beta, t, spec.interval.a, tol);
}

namespace {

void check_grid_sizes(int nt, int nr) {
  if (nt < 2 || nr < 2) throw std::invalid_argument("green grid: needs at least 2x2 points");
}

double grid_coord(const Interval& iv, int i, int count) {
  return (i == count - 1) ? iv.b : iv.a + i * (iv.width() / (count - 1));
}

}  // namespace

std::vector<double> green_grid(const FracOrders& orders, const Interval& iv, int nt, int nr,
                               double tol) {
  check_grid_sizes(nt, nr);
  std::vector<double> values(static_cast<std::size_t>(nt) * static_cast<std::size_t>(nr));
  std::string error_msg;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < nt; ++i) {
    try {
      const double t = grid_coord(iv, i, nt);
      for (int j = 0; j < nr; ++j) {
        const double r = grid_coord(iv, j, nr);
        values[static_cast<std::size_t>(i) * static_cast<std::size_t>(nr) +
               static_cast<std::size_t>(j)] = green_eval(t, r, orders, iv, tol);
      }
    } catch (const std::exception& e) {
#pragma omp critical
      error_msg = e.what();
    }
  }
  if (!error_msg.empty()) throw QuadratureError(error_msg);
  return values;
}

std::vector<double> green_grid_serial(const FracOrders& orders, const Interval& iv, int nt,
                                      int nr, double tol) {
  check_grid_sizes(nt, nr);
  std::vector<double> values(static_cast<std::size_t>(nt) * static_cast<std::size_t>(nr));
  for (int i = 0; i < nt; ++i) {
    const double t = grid_coord(iv, i, nt);
    for (int j = 0; j < nr; ++j) {
      const double r = grid_coord(iv, j, nr);
      values[static_cast<std::size_t>(i) * static_cast<std::size_t>(nr) +
             static_cast<std::size_t>(j)] = green_eval(t, r, orders, iv, tol);
    }
  }
  return values;
}

}  // namespace fraclyap
