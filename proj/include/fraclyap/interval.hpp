#ifndef FRACLYAP_INTERVAL_HPP
#define FRACLYAP_INTERVAL_HPP

#include <cmath>
#include <stdexcept>

namespace fraclyap {

/// The domain [a,b] of the boundary value problem.
struct Interval {
  double a;
  double b;

  Interval(double a_, double b_) : a(a_), b(b_) {
    if (!(std::isfinite(a) && std::isfinite(b)))
      throw std::domain_error("Interval: endpoints must be finite");
    if (!(a < b)) throw std::domain_error("Interval: requires a < b");
  }

  [[nodiscard]] double width() const { return b - a; }
  [[nodiscard]] double midpoint() const { return 0.5 * (a + b); }
  [[nodiscard]] bool contains(double t) const { return a <= t && t <= b; }
};

}  // namespace fraclyap

#endif  // FRACLYAP_INTERVAL_HPP
