#ifndef FRACLYAP_QUADRATURE_HPP
#define FRACLYAP_QUADRATURE_HPP

#include <cmath>
#include <cstdio>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace fraclyap {

/// Thrown when an integral fails to converge or an integrand misbehaves.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RuleKind { smooth, double_exponential };

/// Immutable set of nodes/weights on an interval. Nodes are strictly
/// increasing, weights positive.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  RuleKind kind = RuleKind::smooth;

  [[nodiscard]] std::size_t size() const { return nodes.size(); }

  /// Apply the rule to a callable.
  template <class F>
  double integrate(F&& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

/// n-point Gauss-Legendre rule on [a,b]; exact for polynomials of degree
/// <= 2n-1. Nodes found by Newton iteration on P_n, O(n^2) total.
QuadratureRule gauss_legendre(int n, double a, double b);

namespace detail {

struct DeNode {
  double tau;     // offset from the endpoint as a fraction of (b-a)
  double weight;  // (pi/2) cosh(t) sech^2((pi/2) sinh(t))
};

inline constexpr int kDeMaxLevel = 12;

/// Positive-t abscissae for one trapezoid refinement level (t=0 excluded).
/// Level 0 has step h=1; level m adds the odd multiples of h=2^-m.
std::span<const DeNode> de_level_nodes(int level);

inline constexpr double kDeCenterTau = 0.5;              // t=0 maps to the midpoint
inline constexpr double kDeCenterWeight = 1.5707963267948966;  // pi/2

template <class F>
double de_call(F& f, double x, double xc) {
  if constexpr (std::is_invocable_v<F&, double, double>) {
    return f(x, xc);
  } else {
    return f(x);
  }
}

}  // namespace detail

struct DeResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int levels = 0;
  bool converged = false;
};

/// tanh-sinh (double exponential) quadrature of f over (a,b).
///
/// f may blow up at either endpoint with an integrable power singularity.
/// It is called either as f(x) or as f(x, xc) where xc is the signed
/// distance to the nearer endpoint (x-a > 0 on the left half, x-b < 0 on
/// the right); the two-argument form keeps full precision when the
/// singular endpoint is not exactly representable.
///
/// Levels double the node count each refinement, starting at step h=1, up
/// to level 12. Returns the value plus the last successive-level
/// difference as the error estimate; converged=false when that difference
/// still exceeds tol at the maximum level.
template <class F>
DeResult de_integrate_detail(F&& f, double a, double b, double tol) {
  if (!(std::isfinite(a) && std::isfinite(b) && a < b))
    throw std::invalid_argument("de_integrate: requires finite a < b");
  if (!(tol >= 1e-14))
    throw std::invalid_argument("de_integrate: tol must be >= 1e-14");

  const double width = b - a;
  const double half = 0.5 * width;
  double abs_sum = 0.0;  // conditioning estimate for the round-off floor

  auto pair_term = [&](const detail::DeNode& nd) -> double {
    const double delta = width * nd.tau;
    if (delta == 0.0) return 0.0;  // beyond double resolution: truncate
    double acc = 0.0;
    const double xr = b - delta;
    const double fr = detail::de_call(f, xr, -delta);
    if (std::isfinite(fr)) {
      acc += nd.weight * fr;
    } else if (delta > 1e-12 * width) {
      throw QuadratureError("de_integrate: non-finite integrand away from the endpoints");
    }
    const double xl = a + delta;
    const double fl = detail::de_call(f, xl, delta);
    if (std::isfinite(fl)) {
      acc += nd.weight * fl;
    } else if (delta > 1e-12 * width) {
      throw QuadratureError("de_integrate: non-finite integrand away from the endpoints");
    }
    abs_sum += std::abs(acc);
    return acc;
  };

  // level 0, h = 1
  double sum0;
  {
    const double xc = a + width * detail::kDeCenterTau;
    const double fc = detail::de_call(f, xc, xc - a <= b - xc ? xc - a : xc - b);
    if (!std::isfinite(fc))
      throw QuadratureError("de_integrate: non-finite integrand at the midpoint");
    sum0 = detail::kDeCenterWeight * fc;
    abs_sum += std::abs(sum0);
    for (const auto& nd : detail::de_level_nodes(0)) sum0 += pair_term(nd);
  }

  DeResult res;
  double h = 1.0;
  double prev = half * h * sum0;
  for (int level = 1; level <= detail::kDeMaxLevel; ++level) {
    h *= 0.5;
    double add = 0.0;
    for (const auto& nd : detail::de_level_nodes(level)) add += pair_term(nd);
    const double cur = 0.5 * prev + half * h * add;
    const double diff = std::abs(cur - prev);
    res.value = cur;
    res.error_estimate = diff;
    res.levels = level;
    const double scale = std::max(1.0, std::abs(cur));
    if (diff <= tol * scale || diff <= 100.0 * 2.220446049250313e-16 * half * h * abs_sum) {
      res.converged = true;
      return res;
    }
    prev = cur;
  }
  res.converged = false;
  return res;
}

/// Convenience wrapper: returns the value, throws QuadratureError when the
/// successive-level difference still exceeds tol at the maximum level.
template <class F>
double de_integrate(F&& f, double a, double b, double tol) {
  const DeResult r = de_integrate_detail(std::forward<F>(f), a, b, tol);
  if (!r.converged) {
    char msg[96];
    std::snprintf(msg, sizeof msg, "de_integrate: not converged at level %d, estimate %.3g",
                  r.levels, r.error_estimate);
    throw QuadratureError(msg);
  }
  return r.value;
}

}  // namespace fraclyap

#endif  // FRACLYAP_QUADRATURE_HPP
