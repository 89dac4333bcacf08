// Timing comparison of the serial reference kernels against the
// OpenMP-parallel ones: Nystrom assembly and Green-grid evaluation.
#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fraclyap/green.hpp"
#include "fraclyap/spectral.hpp"

using namespace fraclyap;

namespace {

double now() {
#ifdef _OPENMP
  return omp_get_wtime();
#else
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
#endif
}

template <class F>
double time_best_of(int reps, F&& run) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const double t0 = now();
    run();
    const double t1 = now();
    if (t1 - t0 < best) best = t1 - t0;
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 64;
  const int grid = argc > 2 ? std::atoi(argv[2]) : 101;
  const int reps = 3;

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (OpenMP disabled)\n");
#endif

  const ProblemSpec spec{FracOrders(0.7, 0.8), Interval(0.0, 1.0),
                         [](double) { return 1.0; }, "bench"};

  volatile double sink = 0.0;

  const double t_ser = time_best_of(reps, [&] {
    const KernelMatrix m = nystrom_matrix_serial(spec, n);
    sink = m.entries.back();
  });
  const double t_par = time_best_of(reps, [&] {
    const KernelMatrix m = nystrom_matrix(spec, n);
    sink = m.entries.back();
  });
  std::printf("nystrom assembly n=%-4d  serial %8.3f ms   parallel %8.3f ms   speedup %.2fx\n",
              n, 1e3 * t_ser, 1e3 * t_par, t_ser / t_par);

  const double g_ser = time_best_of(reps, [&] {
    const auto g = green_grid_serial(spec.orders, spec.interval, grid, grid);
    sink = g.back();
  });
  const double g_par = time_best_of(reps, [&] {
    const auto g = green_grid(spec.orders, spec.interval, grid, grid);
    sink = g.back();
  });
  std::printf("green grid %dx%-9d serial %8.3f ms   parallel %8.3f ms   speedup %.2fx\n",
              grid, grid, 1e3 * g_ser, 1e3 * g_par, g_ser / g_par);

  (void)sink;
  return 0;
}
