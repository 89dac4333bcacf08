#ifndef FRACLYAP_SPECTRAL_HPP
#define FRACLYAP_SPECTRAL_HPP

#include <vector>

#include "fraclyap/green.hpp"

namespace fraclyap {

/// Nystrom discretization of u(t) = int_a^b G(t,r) q(r) u(r) dr on
/// Gauss-Legendre nodes: entries[i*n+j] = w_j * G(t_i, t_j) * q(t_j).
struct KernelMatrix {
  int n = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> entries;  // row-major n x n

  [[nodiscard]] double at(int i, int j) const {
    return entries[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                   static_cast<std::size_t>(j)];
  }
};

struct EigenPair {
  double mu = 0.0;                // dominant eigenvalue of the kernel matrix
  std::vector<double> vector;     // eigenfunction samples, max-norm 1, positive max entry
  int iterations = 0;
  double residual = 0.0;          // ||Mv - mu v||_inf with ||v||_inf = 1
  bool converged = false;
};

struct SpectralReport {
  double alpha = 0.0;
  double beta = 0.0;
  double a = 0.0;
  double b = 0.0;
  int n = 0;
  double mu_max = 0.0;         // Perron eigenvalue at 2n nodes
  double lambda_min = 0.0;     // extrapolated smallest |lambda| of the eigenproblem
  double eigen_bound = 0.0;
  double lyap_bound = 0.0;
  bool bound_satisfied = false;
  double refinement_gap = 0.0;  // |1/mu(n) - 1/mu(2n)| / (1/mu(2n))

  [[nodiscard]] bool low_confidence() const { return refinement_gap > 1e-4; }
};

/// (alpha+beta-1) Gamma(alpha) Gamma(beta) / (b-a)^(alpha+beta-1); the
/// constant of the Lyapunov inequality, reciprocal of green_sup.
double lyapunov_bound(const FracOrders& orders, const Interval& iv);

/// Eigenvalue lower bound lyapunov_bound / (b-a).
double eigen_lower_bound(const FracOrders& orders, const Interval& iv);

/// Assemble the Nystrom matrix; OpenMP-parallel across rows. Entries are
/// pure kernel evaluations, so the result is bitwise identical to
/// nystrom_matrix_serial. Throws with the offending (i,j) when a kernel
/// value or q sample is not finite.
KernelMatrix nystrom_matrix(const ProblemSpec& spec, int n, double tol = kDefaultKernelTol);

/// Serial reference for the assembly, kept for tests and the benchmark.
KernelMatrix nystrom_matrix_serial(const ProblemSpec& spec, int n,
                                   double tol = kDefaultKernelTol);

/// Power iteration from the all-ones vector; converged when the relative
/// eigenvalue change drops below tol. Non-convergence returns the best
/// iterate with converged=false; an all-zero matrix throws.
EigenPair dominant_eigen(const KernelMatrix& m, double tol = 1e-12, int max_iter = 50000);

/// Smallest |lambda| of the fractional eigenproblem via the reciprocal of
/// the Perron value of the G-kernel operator with q == 1. mu is computed
/// at n and 2n nodes; lambda_min is the Richardson extrapolation of the
/// two reciprocals using the kernel's Hoelder convergence order
/// sigma = alpha+beta, and refinement_gap their raw relative change.
SpectralReport smallest_eigenvalue(const FracOrders& orders, const Interval& iv, int n,
                                   double tol = kDefaultKernelTol);

struct LyapunovCheck {
  double integral_abs_q = 0.0;
  double bound = 0.0;
  bool holds = false;
  double spectral_radius = 0.0;  // of the |q|-kernel operator
};

/// Evaluates both sides of the Lyapunov inequality for spec.q plus the
/// contrapositive diagnostic: when int |q| < bound the spectral radius of
/// the |q|-kernel operator must come out below 1.
LyapunovCheck lyapunov_check(const ProblemSpec& spec, int n, double tol = kDefaultKernelTol);

}  // namespace fraclyap

#endif  // FRACLYAP_SPECTRAL_HPP
