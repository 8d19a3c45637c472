/*
Serial reference kernel vs OpenMP kernel for barrier-crossing counts.

Usage: bench_kernels [n_paths] [n_steps] [threads]
*/

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iostream>

#include <omp.h>

#include "crowdfx/kernels.hpp"

int main(int argc, char** argv) {
  namespace chrono = std::chrono;
  using crowdfx::kernels::BarrierWalk;

  const std::uint64_t n_paths = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 100000;
  const std::int64_t n_steps = argc > 2 ? std::strtoll(argv[2], nullptr, 10) : 120;
  const int threads = argc > 3 ? std::atoi(argv[3]) : omp_get_max_threads();
  const std::uint64_t seed = 20221231;

  // barrier 1.5 standard deviations of the terminal value below x0
  const double sigma = 0.006;
  const BarrierWalk walk{1.0, sigma, 1.0 - 1.5 * sigma * std::sqrt(double(n_steps)), n_steps};

  auto t0 = chrono::steady_clock::now();
  const std::uint64_t serial = crowdfx::kernels::reference::count_crossings(walk, seed, n_paths);
  auto t1 = chrono::steady_clock::now();
  const std::uint64_t parallel = crowdfx::kernels::count_crossings(walk, seed, n_paths, threads);
  auto t2 = chrono::steady_clock::now();

  const auto ms = [](auto d) { return chrono::duration<double, std::milli>(d).count(); };
  std::cout << "paths " << n_paths << "  steps " << n_steps << "  threads " << threads << '\n'
            << "serial   " << ms(t1 - t0) << " ms  hits " << serial << '\n'
            << "openmp   " << ms(t2 - t1) << " ms  hits " << parallel << '\n'
            << "speedup  " << ms(t1 - t0) / ms(t2 - t1) << '\n';
  if (serial != parallel) {
    std::cerr << "MISMATCH between serial and parallel kernels\n";
    return 1;
  }
}
