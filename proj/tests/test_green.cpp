#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fraclyap/green.hpp"
#include "fraclyap/quadrature.hpp"

using namespace fraclyap;

namespace {

// high-precision references (mpmath quad against the kernel integral)
struct GreenRef {
  double t, r, alpha, beta, value;
};

constexpr GreenRef kRefs[] = {
    {0.7, 0.3, 0.7, 0.8, 0.46481868783207820},
    {0.3, 0.7, 0.7, 0.8, 0.38330587322741939},
    {0.9, 0.89, 0.7, 0.8, 1.1849880405352379},
    {0.05, 0.9, 0.7, 0.8, 0.078449552861417403},
    {0.5, 0.5, 0.7, 0.8, 0.93580015524781952},
    {0.7, 0.3, 0.55, 0.6, 0.51579429060033481},
    {0.25, 0.75, 0.55, 0.6, 0.38305537168191921},
    {0.6, 0.4, 0.5, 0.9, 0.75039096622423351},
    {0.4, 0.6, 0.5, 0.9, 0.42760043093728611},
    {0.8, 0.2, 0.9, 0.95, 0.24121170405401043},
};

const Interval kUnit(0.0, 1.0);

ProblemSpec make_spec(double alpha, double beta, double a = 0.0, double b = 1.0) {
  return ProblemSpec{FracOrders(alpha, beta), Interval(a, b), [](double) { return 1.0; }, ""};
}

}  // namespace

TEST_CASE("FracOrders admissibility") {
  CHECK_THROWS_AS(FracOrders(0.5, 0.5), std::domain_error);   // sum == 1 rejected
  CHECK_THROWS_AS(FracOrders(0.0, 0.9), std::domain_error);
  CHECK_THROWS_AS(FracOrders(1.1, 0.9), std::domain_error);
  CHECK_THROWS_AS(FracOrders(0.2, 0.5), std::domain_error);
  CHECK_NOTHROW(FracOrders(1.0, 1.0));
  CHECK_NOTHROW(FracOrders(0.55, 0.56));
}

TEST_CASE("Interval invariants") {
  CHECK_THROWS_AS(Interval(1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(Interval(2.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(Interval(0.0, std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("diagonal closed form") {
  const FracOrders o(0.75, 0.75);
  CHECK(std::abs(green_diag(0.5, o, kUnit) - 0.94177554044374895) <= 1e-12);
  CHECK(green_diag(0.0, o, kUnit) == 0.0);
  CHECK(green_diag(1.0, FracOrders(1.0, 1.0), kUnit) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(green_diag(1.0, FracOrders(0.6, 0.8), kUnit) - 1.4419511985598424) <= 1e-12);
}

TEST_CASE("supremum closed form equals the diagonal at b, bit for bit") {
  for (auto [al, be] : {std::pair{0.7, 0.8}, {0.9, 0.9}, {1.0, 1.0}}) {
    const FracOrders o(al, be);
    CHECK(green_sup(o, kUnit) == green_diag(1.0, o, kUnit));
  }
  CHECK(std::abs(green_sup(FracOrders(0.9, 0.9), kUnit) - 1.0946022681416653) <= 1e-12);
  CHECK(green_sup(FracOrders(1.0, 1.0), Interval(0.0, 2.0)) ==
        doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("classical orders give the min kernel") {
  const FracOrders o(1.0, 1.0);
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; j <= 10; ++j) {
      const double t = i / 10.0;
      const double r = j / 10.0;
      CHECK(std::abs(green_eval(t, r, o, kUnit) - std::min(t, r)) <= 1e-12);
    }
  }
  // shifted interval: G = min(t,r) - a
  const Interval iv(-0.5, 1.5);
  CHECK(std::abs(green_eval(1.0, 0.25, o, iv) - 0.75) <= 1e-12);
}

TEST_CASE("green_eval matches high-precision references") {
  for (const GreenRef& ref : kRefs) {
    const double v = green_eval(ref.t, ref.r, FracOrders(ref.alpha, ref.beta), kUnit);
    CHECK(std::abs(v - ref.value) <= 1e-9);
  }
}

TEST_CASE("the mapped branch integral matches the raw closed form") {
  // int_0^0.5 (0.75-s)^(-1/2)(0.5-s)^(-1/2) ds after u = 0.5-s:
  // int_0^0.5 u^(-1/2)(u+0.25)^(-1/2) du; over pi this is the
  // (alpha=beta=1/2) branch value, admissible only as a quadrature test.
  const double v = de_integrate(
      [](double u) { return std::pow(u, -0.5) * std::pow(u + 0.25, -0.5); }, 0.0, 0.5, 1e-12);
  CHECK(std::abs(v / M_PI - 0.72970366382213570) <= 1e-12);
}

TEST_CASE("domain and boundary behaviour") {
  const FracOrders o(0.7, 0.8);
  CHECK_THROWS_AS(green_eval(1.5, 0.5, o, kUnit), std::domain_error);
  CHECK_THROWS_AS(green_eval(0.5, -0.1, o, kUnit), std::domain_error);
  CHECK(green_eval(0.0, 0.5, o, kUnit) == 0.0);  // u(a) = 0 side
  CHECK(green_eval(0.5, 0.0, o, kUnit) == 0.0);
  // near-diagonal guard returns the closed form exactly
  CHECK(green_eval(0.5, 0.5 + 1e-10, o, kUnit) == green_diag(0.5, o, kUnit));
}

TEST_CASE("Lemma-3 grid properties at desk scale") {
  for (auto [al, be] : {std::pair{0.7, 0.8}, {1.0, 1.0}}) {
    const FracOrders o(al, be);
    const int n = 41;
    const auto g = green_grid(o, kUnit, n, n);
    const double sup = green_sup(o, kUnit);
    double max_diag = 0.0;
    double prev_diag = -1.0;
    for (int i = 0; i < n; ++i) {
      const double diag = g[static_cast<std::size_t>(i) * n + i];
      CHECK(diag >= prev_diag);  // diagonal nondecreasing
      prev_diag = diag;
      max_diag = std::max(max_diag, diag);
      for (int j = 0; j < n; ++j) {
        const double v = g[static_cast<std::size_t>(i) * n + j];
        CHECK(v >= -1e-12);                                              // nonnegativity
        CHECK(v <= g[static_cast<std::size_t>(j) * n + j] + 1e-9);       // G(t,r) <= G(r,r)
      }
    }
    CHECK(max_diag == sup);  // attained at r = b with the same closed form
  }
}

TEST_CASE("parallel grid equals the serial reference bit for bit") {
  const FracOrders o(0.7, 0.8);
  const auto par = green_grid(o, kUnit, 21, 21);
  const auto ser = green_grid_serial(o, kUnit, 21, 21);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) CHECK(par[i] == ser[i]);
}

TEST_CASE("kernel application: classical analytic values") {
  const ProblemSpec spec = make_spec(1.0, 1.0);
  auto one = [](double) { return 1.0; };
  CHECK(std::abs(green_apply_kernel(one, 1.0, spec) - 0.5) <= 1e-9);
  CHECK(std::abs(green_apply_kernel(one, 0.5, spec) - 0.375) <= 1e-9);
  auto zero = [](double) { return 0.0; };
  CHECK(green_apply_kernel(zero, 0.3, spec) == 0.0);
}

TEST_CASE("sequential application: classical analytic values") {
  const ProblemSpec spec = make_spec(1.0, 1.0);
  auto one = [](double) { return 1.0; };
  CHECK(std::abs(green_apply_sequential(one, 0.5, spec) - 0.375) <= 1e-9);
  auto zero = [](double) { return 0.0; };
  CHECK(green_apply_sequential(zero, 0.5, spec) == 0.0);
}

TEST_CASE("kernel and sequential routes agree (Fubini)") {
  const ProblemSpec spec = make_spec(0.7, 0.8);
  auto f = [](double r) { return std::sin(M_PI * r); };
  for (double t : {0.25, 0.5, 0.75}) {
    const double k = green_apply_kernel(f, t, spec);
    const double s = green_apply_sequential(f, t, spec);
    CHECK(std::abs(k - s) <= 1e-7);
  }
}
