// fraclyap: bounds, Green kernel values, eigenvalues and verification
// suites for the mixed-derivative fractional boundary value problem.
#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "fraclyap/fracops.hpp"
#include "fraclyap/green.hpp"
#include "fraclyap/quadrature.hpp"
#include "fraclyap/spectral.hpp"

namespace {

using namespace fraclyap;

// exit codes: 0 ok, 1 verification failure, 2 invalid arguments/domain,
// 3 low-confidence convergence, 4 I/O error, 5 empty result set
enum ExitCode {
  kOk = 0,
  kVerifyFail = 1,
  kInvalid = 2,
  kLowConfidence = 3,
  kIoError = 4,
  kEmpty = 5,
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt7(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.7g", v);
  return buf;
}

double env_tol() {
  if (const char* s = std::getenv("FRACLYAP_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(s, &end);
    if (end != s && v >= 1e-14 && v < 1.0) return v;
    throw std::invalid_argument("FRACLYAP_TOL must be a real in [1e-14, 1)");
  }
  return kDefaultKernelTol;
}

struct ProblemFlags {
  double alpha = 1.0;
  double beta = 1.0;
  double a = 0.0;
  double b = 1.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--alpha", alpha, "left Riemann-Liouville order in (0,1]")->required();
    cmd->add_option("--beta", beta, "right Caputo order in (0,1]")->required();
    cmd->add_option("--a", a, "left endpoint")->required();
    cmd->add_option("--b", b, "right endpoint")->required();
  }

  [[nodiscard]] FracOrders orders() const { return {alpha, beta}; }
  [[nodiscard]] Interval interval() const { return {a, b}; }
};

/// Canonical JSON for a SpectralReport: fixed field order, 17 significant
/// digits, one line. Re-serializing a parsed report reproduces the bytes.
std::string report_json(const SpectralReport& r) {
  std::string s = "{";
  s += "\"alpha\":" + fmt17(r.alpha);
  s += ",\"beta\":" + fmt17(r.beta);
  s += ",\"a\":" + fmt17(r.a);
  s += ",\"b\":" + fmt17(r.b);
  s += ",\"n\":" + std::to_string(r.n);
  s += ",\"mu_max\":" + fmt17(r.mu_max);
  s += ",\"lambda_min\":" + fmt17(r.lambda_min);
  s += ",\"eigen_bound\":" + fmt17(r.eigen_bound);
  s += ",\"lyap_bound\":" + fmt17(r.lyap_bound);
  s += std::string(",\"bound_satisfied\":") + (r.bound_satisfied ? "true" : "false");
  s += ",\"refinement_gap\":" + fmt17(r.refinement_gap);
  s += "}";
  return s;
}

int cmd_bound(const ProblemFlags& pf) {
  const FracOrders o = pf.orders();
  const Interval iv = pf.interval();
  std::cout << "lyapunov_bound    = " << fmt7(lyapunov_bound(o, iv)) << "\n";
  std::cout << "eigen_lower_bound = " << fmt7(eigen_lower_bound(o, iv)) << "\n";
  return kOk;
}

int cmd_green(const ProblemFlags& pf, double t, double r, double tol) {
  const FracOrders o = pf.orders();
  const Interval iv = pf.interval();
  const bool diagonal = std::abs(t - r) <= 1e-9 * iv.width();
  const double g = green_eval(t, r, o, iv, tol);
  std::cout << "G(" << fmt7(t) << "," << fmt7(r) << ") = " << fmt7(g);
  if (diagonal) std::cout << "  (diagonal closed form)";
  std::cout << "\n";
  return kOk;
}

int cmd_eigen(const ProblemFlags& pf, int n, bool json, double tol) {
  const SpectralReport rep = smallest_eigenvalue(pf.orders(), pf.interval(), n, tol);
  if (json) {
    std::cout << report_json(rep) << "\n";
  } else {
    std::cout << "alpha           = " << fmt7(rep.alpha) << "\n"
              << "beta            = " << fmt7(rep.beta) << "\n"
              << "interval        = [" << fmt7(rep.a) << ", " << fmt7(rep.b) << "]\n"
              << "n               = " << rep.n << "\n"
              << "mu_max          = " << fmt7(rep.mu_max) << "\n"
              << "lambda_min      = " << fmt7(rep.lambda_min) << "\n"
              << "eigen_bound     = " << fmt7(rep.eigen_bound) << "\n"
              << "lyap_bound      = " << fmt7(rep.lyap_bound) << "\n"
              << "bound_satisfied = " << (rep.bound_satisfied ? "true" : "false") << "\n"
              << "refinement_gap  = " << fmt7(rep.refinement_gap) << "\n";
  }
  if (rep.low_confidence()) return kLowConfidence;
  if (!rep.bound_satisfied) return kVerifyFail;
  return kOk;
}

struct SweepArgs {
  double alpha_min = 0.55, alpha_max = 1.0, alpha_step = 0.05;
  double beta_min = 0.55, beta_max = 1.0, beta_step = 0.05;
  double a = 0.0, b = 1.0;
  int n = 64;
  std::string out;
};

std::vector<double> grid_values(double lo, double hi, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("sweep: step must be positive");
  if (hi < lo) throw std::invalid_argument("sweep: max must be >= min");
  std::vector<double> v;
  const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
  for (int i = 0; i < count; ++i) v.push_back(lo + i * step);
  return v;
}

int cmd_sweep(const SweepArgs& args, double tol) {
  const Interval iv(args.a, args.b);
  const auto alphas = grid_values(args.alpha_min, args.alpha_max, args.alpha_step);
  const auto betas = grid_values(args.beta_min, args.beta_max, args.beta_step);

  struct Cell {
    bool admissible = false;
    SpectralReport rep;
  };
  const std::size_t na = alphas.size();
  const std::size_t nb = betas.size();
  std::vector<Cell> cells(na * nb);
  std::string error_msg;

#pragma omp parallel for collapse(2) schedule(dynamic)
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      try {
        FracOrders orders(alphas[i], betas[j]);
        Cell& cell = cells[i * nb + j];
        cell.rep = smallest_eigenvalue(orders, iv, args.n, tol);
        cell.admissible = true;
      } catch (const std::domain_error&) {
        // inadmissible (alpha,beta) grid corner: skipped, counted below
      } catch (const std::exception& e) {
#pragma omp critical
        error_msg = e.what();
      }
    }
  }
  if (!error_msg.empty()) throw QuadratureError(error_msg);

  std::string csv = "alpha,beta,a,b,n,lambda_min,eigen_bound,ratio,refinement_gap,satisfied\n";
  std::size_t skipped = 0;
  std::size_t rows = 0;
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      const Cell& cell = cells[i * nb + j];
      if (!cell.admissible) {
        ++skipped;
        continue;
      }
      const SpectralReport& r = cell.rep;
      csv += fmt17(r.alpha) + "," + fmt17(r.beta) + "," + fmt17(r.a) + "," + fmt17(r.b) + "," +
             std::to_string(r.n) + "," + fmt17(r.lambda_min) + "," + fmt17(r.eigen_bound) + "," +
             fmt17(r.lambda_min / r.eigen_bound) + "," + fmt17(r.refinement_gap) + "," +
             (r.bound_satisfied ? "true" : "false") + "\n";
      ++rows;
    }
  }
  csv += "# skipped=" + std::to_string(skipped) + "\n";

  if (rows == 0) {
    std::cerr << "sweep: no admissible (alpha,beta) grid points\n";
    return kEmpty;
  }
  if (args.out.empty()) {
    std::cout << csv;
  } else {
    std::ofstream f(args.out, std::ios::binary);
    if (!f) {
      std::cerr << "sweep: cannot open " << args.out << " for writing\n";
      return kIoError;
    }
    f << csv;
    f.flush();
    if (!f) {
      std::cerr << "sweep: write to " << args.out << " failed\n";
      return kIoError;
    }
  }
  return kOk;
}

struct VerifyArgs {
  double alpha = 0.7;
  double beta = 0.8;
  double a = 0.0;
  double b = 1.0;
  int grid = 101;
  double tol = 0.0;  // 0: use FRACLYAP_TOL / default
};

int cmd_verify(const VerifyArgs& va, double base_tol) {
  const double tol = va.tol > 0.0 ? va.tol : base_tol;
  const FracOrders orders(va.alpha, va.beta);
  const Interval iv(va.a, va.b);
  bool all_pass = true;

  auto report = [&](const std::string& name, double residual, double limit) {
    const bool ok = residual <= limit;
    all_pass = all_pass && ok;
    std::cout << (ok ? "PASS" : "FAIL") << "  " << name << ": max residual " << fmt7(residual)
              << " (limit " << fmt7(limit) << ")\n";
  };

  // section 2 composition identities at p = alpha and p = beta
  for (double p : {va.alpha, va.beta}) {
    const CompositionReport rep =
        composition_residuals(FracOrder(p), default_test_family(FracOrder(p)), iv, tol);
    double worst1 = 0.0, worst2 = 0.0;
    for (double r : rep.property1)
      if (!std::isnan(r)) worst1 = std::max(worst1, r);
    for (double r : rep.property2)
      if (!std::isnan(r)) worst2 = std::max(worst2, r);
    report("composition property 1 (p=" + fmt7(p) + ")", worst1, 1e-7);
    report("composition property 2 (p=" + fmt7(p) + ")", worst2, 1e-7);
  }

  // Fubini: kernel route vs sequential route
  {
    const ProblemSpec spec{orders, iv, [](double) { return 1.0; }, ""};
    double worst = 0.0;
    for (int fi = 0; fi < 2; ++fi) {
      auto f = [fi, &iv](double r) {
        return fi == 0 ? 1.0 : std::sin(M_PI * (r - iv.a) / iv.width());
      };
      for (double frac : {0.25, 0.5, 0.75}) {
        const double t = iv.a + frac * iv.width();
        const double k = green_apply_kernel(f, t, spec, 64, tol);
        const double s = green_apply_sequential(f, t, spec, tol);
        worst = std::max(worst, std::abs(k - s));
      }
    }
    report("Fubini kernel-vs-sequential", worst, 1e-7);
  }

  // Lemma 3 grid suite
  {
    const int n = va.grid;
    const auto g = green_grid(orders, iv, n, n, tol);
    const double sup = green_sup(orders, iv);
    double min_val = 0.0;
    double dominance = 0.0;
    double worst_monotone = 0.0;
    double prev_diag = 0.0;
    double max_diag = 0.0;
    for (int i = 0; i < n; ++i) {
      const double diag = g[static_cast<std::size_t>(i) * n + i];
      if (i > 0) worst_monotone = std::max(worst_monotone, prev_diag - diag);
      prev_diag = diag;
      max_diag = std::max(max_diag, diag);
      for (int j = 0; j < n; ++j) {
        const double v = g[static_cast<std::size_t>(i) * n + j];
        min_val = std::min(min_val, v);
        dominance = std::max(dominance, v - g[static_cast<std::size_t>(j) * n + j]);
      }
    }
    report("Lemma 3 nonnegativity (-min G)", -min_val, 1e-12);
    report("Lemma 3 diagonal dominance", dominance, 1e-9);
    report("Lemma 3 diagonal monotonicity", worst_monotone, 0.0);
    report("Lemma 3 supremum attained at b", std::abs(max_diag - sup), 0.0);
  }

  // classical kernel reduces to min(t,r) - a
  {
    const FracOrders classical(1.0, 1.0);
    double worst = 0.0;
    const int n = 51;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double t = iv.a + i * iv.width() / (n - 1);
        const double r = iv.a + j * iv.width() / (n - 1);
        const double v = green_eval(t, r, classical, iv, tol);
        worst = std::max(worst, std::abs(v - (std::min(t, r) - iv.a)));
      }
    }
    report("classical kernel min(t,r)-a", worst, 1e-12);
  }

  std::cout << (all_pass ? "all checks passed" : "verification FAILED") << "\n";
  return all_pass ? kOk : kVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lyapunov bounds, Green kernel and eigenvalues for the fractional BVP "
               "-CD_{b-}^alpha D_{a+}^beta u + q u = 0, u(a) = D_{a+}^beta u(b) = 0"};
  app.require_subcommand(1);

  ProblemFlags bound_flags, eigen_flags, green_flags;
  double green_t = 0.0, green_r = 0.0;
  int eigen_n = 64;
  bool eigen_json = false;
  SweepArgs sweep_args;
  VerifyArgs verify_args;

  CLI::App* bound = app.add_subcommand("bound", "print the Lyapunov and eigenvalue bounds");
  bound_flags.attach(bound);

  CLI::App* eigen = app.add_subcommand("eigen", "smallest |lambda| of the eigenproblem");
  eigen_flags.attach(eigen);
  eigen->add_option("--n", eigen_n, "Nystrom nodes (refined at 2n)")->default_val(64);
  eigen->add_flag("--json", eigen_json, "emit the report as canonical JSON");

  CLI::App* green = app.add_subcommand("green", "evaluate the Green function at (t,r)");
  green_flags.attach(green);
  green->add_option("--t", green_t)->required();
  green->add_option("--r", green_r)->required();

  CLI::App* sweep = app.add_subcommand("sweep", "eigenvalue/bound table over an (alpha,beta) grid");
  sweep->add_option("--alpha-min", sweep_args.alpha_min)->required();
  sweep->add_option("--alpha-max", sweep_args.alpha_max)->required();
  sweep->add_option("--alpha-step", sweep_args.alpha_step)->required();
  sweep->add_option("--beta-min", sweep_args.beta_min)->required();
  sweep->add_option("--beta-max", sweep_args.beta_max)->required();
  sweep->add_option("--beta-step", sweep_args.beta_step)->required();
  sweep->add_option("--a", sweep_args.a)->required();
  sweep->add_option("--b", sweep_args.b)->required();
  sweep->add_option("--n", sweep_args.n)->default_val(64);
  sweep->add_option("--out", sweep_args.out, "CSV output path (default stdout)");

  CLI::App* verify = app.add_subcommand("verify", "run the identity-verification suites");
  verify->add_option("--alpha", verify_args.alpha)->default_val(0.7);
  verify->add_option("--beta", verify_args.beta)->default_val(0.8);
  verify->add_option("--a", verify_args.a)->default_val(0.0);
  verify->add_option("--b", verify_args.b)->default_val(1.0);
  verify->add_option("--grid", verify_args.grid, "Lemma-3 grid resolution")->default_val(101);
  verify->add_option("--tol", verify_args.tol, "override the quadrature tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    const double tol = env_tol();
    if (bound->parsed()) return cmd_bound(bound_flags);
    if (eigen->parsed()) return cmd_eigen(eigen_flags, eigen_n, eigen_json, tol);
    if (green->parsed()) return cmd_green(green_flags, green_t, green_r, tol);
    if (sweep->parsed()) return cmd_sweep(sweep_args, tol);
    if (verify->parsed()) return cmd_verify(verify_args, tol);
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const QuadratureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kLowConfidence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}
