// Benchmark: OpenMP edge-pair kernel vs the serial reference on closed-helix
// inscriptions of increasing size.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "wr/curves.hpp"
#include "wr/writhe.hpp"

namespace {

template <typename F>
double time_best_of(F&& f, int reps, double* result) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    *result = f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  int max_n = argc > 1 ? std::atoi(argv[1]) : 4000;
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (OpenMP disabled)\n");
#endif
  std::printf("%8s %14s %14s %10s %12s\n", "n", "parallel [s]", "serial [s]", "speedup",
              "|diff|");
  const auto helix = wr::closed_helix(3, 1.0, 0.33);
  for (int n = 500; n <= max_n; n *= 2) {
    const auto poly = wr::inscribe(helix, n);
    double wp = 0.0, ws = 0.0;
    const double tp = time_best_of([&] { return wr::writhe_polygonal(poly); }, 3, &wp);
    const double ts =
        time_best_of([&] { return wr::writhe_polygonal_serial(poly); }, 3, &ws);
    std::printf("%8d %14.4f %14.4f %9.2fx %12.3e\n", n, tp, ts, ts / tp,
                std::fabs(wp - ws));
  }
  return 0;
}
