// Benchmark comparing the serial reference paths against the OpenMP kernels:
// exact moment tables, Gram stiffness assembly, and the family sweep.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "toric/calabi.hpp"
#include "toric/integrate.hpp"
#include "toric/polytope.hpp"

using namespace toric;

namespace {

template <class F>
double time_ms(F&& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                   start)
      .count();
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-34s %10.1f ms %10.1f ms %8.2fx\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; both columns run serial\n");
#endif
  std::printf("%-34s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

  {
    const auto p = builtin_polytope("cpn", Rational(4));
    const double s = time_ms([&] { moments_up_to(p, 8, Exec::serial); });
    const double q = time_ms([&] { moments_up_to(p, 8, Exec::parallel); });
    report("moment table cpn(4) degree 8", s, q);
  }
  {
    const double s = time_ms([&] { gram_matrices(0.7, 128, Exec::serial); });
    const double q = time_ms([&] { gram_matrices(0.7, 128, Exec::parallel); });
    report("Gram stiffness order 128", s, q);
  }
  {
    const double s = time_ms([&] { sweep(-0.9, 1.9, 60, 32, Exec::serial); });
    const double q = time_ms([&] { sweep(-0.9, 1.9, 60, 32, Exec::parallel); });
    report("sweep 60 points order 32", s, q);
  }
  return 0;
}
