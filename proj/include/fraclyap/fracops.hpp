#ifndef FRACLYAP_FRACOPS_HPP
#define FRACLYAP_FRACOPS_HPP

#include <functional>
#include <stdexcept>
#include <vector>

#include "fraclyap/interval.hpp"

namespace fraclyap {

using RealFn = std::function<double(double)>;

/// Order of a single fractional operator, restricted to (0,1] (n=1).
struct FracOrder {
  double p;

  explicit FracOrder(double p_) : p(p_) {
    if (!(p > 0.0 && p <= 1.0))
      throw std::domain_error("FracOrder: order must lie in (0,1]");
  }
};

/// c*(t-a)^mu or c*(b-t)^mu; the analytic test basis for the fractional
/// operators. Requires mu > -1 so the function stays integrable.
struct PowerFunction {
  enum class Anchor { left, right };

  Anchor anchor = Anchor::left;
  double exponent = 0.0;
  double coefficient = 1.0;

  PowerFunction(Anchor anchor_, double exponent_, double coefficient_ = 1.0)
      : anchor(anchor_), exponent(exponent_), coefficient(coefficient_) {
    if (!(exponent > -1.0))
      throw std::domain_error("PowerFunction: exponent must exceed -1");
  }

  [[nodiscard]] double value(double t, const Interval& iv) const;
  [[nodiscard]] double derivative(double t, const Interval& iv) const;

  [[nodiscard]] RealFn as_fn(const Interval& iv) const {
    return [*this, iv](double t) { return value(t, iv); };
  }
  [[nodiscard]] RealFn derivative_fn(const Interval& iv) const {
    return [*this, iv](double t) { return derivative(t, iv); };
  }
};

/// I_{a+}^p f(t) = (1/Gamma(p)) int_a^t (t-s)^(p-1) f(s) ds.
/// Returns 0 when t == a.
double rl_integral_left(const RealFn& f, FracOrder p, double t, double a, double tol);

/// I_{b-}^p f(t) = (1/Gamma(p)) int_t^b (s-t)^(p-1) f(s) ds.
/// Returns 0 when t == b.
double rl_integral_right(const RealFn& f, FracOrder p, double t, double b, double tol);

/// D_{a+}^p f(t) = d/dt I_{a+}^(1-p) f(t), central-differenced with step
/// h = max(1e-6, 1e-6*(t-a)). For p == 1 this is a central-difference
/// f'(t). Throws std::domain_error when the stencil does not fit
/// (t - a < 2h).
double rl_derivative_left(const RealFn& f, FracOrder p, double t, double a, double tol);

/// ^C D_{b-}^p f(t) = -I_{b-}^(1-p) f'(t); the caller supplies f'.
/// For p == 1 reduces to -f'(t).
double caputo_derivative_right(const RealFn& f_prime, FracOrder p, double t, double b,
                               double tol);

/// Residuals of the two composition identities, one entry per test
/// function, each the max absolute residual over 17 Chebyshev-distributed
/// interior sample points:
///   property 1: I_{a+}^p D_{a+}^p f = f - c1 (t-a)^(p-1), c1 fitted at the
///               midpoint;
///   property 2: I_{b-}^p ^C D_{b-}^p f = f - f(b).
/// Property 1 is skipped (NaN entry) for functions whose D^p blows up at a
/// faster than the finite-difference evaluation can follow (left-anchored
/// exponents below 1 other than the annihilated power mu = p-1).
struct CompositionReport {
  std::vector<double> property1;
  std::vector<double> property2;
};

CompositionReport composition_residuals(FracOrder p, const std::vector<PowerFunction>& family,
                                        const Interval& iv, double tol);

/// The family used by the verification suites: powers (t-a)^(p-1),
/// (t-a)^1.5, (t-a)^2, (t-a)^3 plus the constant 1.
std::vector<PowerFunction> default_test_family(FracOrder p);

/// The 17 Chebyshev-distributed interior sample points on iv.
std::vector<double> chebyshev_sample(const Interval& iv, int count = 17);

}  // namespace fraclyap

#endif  // FRACLYAP_FRACOPS_HPP
