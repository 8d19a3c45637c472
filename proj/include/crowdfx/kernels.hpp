#pragma once

#include <cstdint>

namespace crowdfx::kernels {

/// Driftless Gaussian walk x_{t+1} = x_t + sigma * z_t started at x0,
/// monitored for x_t <= barrier at steps 1..n_steps.
struct BarrierWalk {
  double x0 = 1.0;
  double sigma = 0.0;
  double barrier = 0.0;
  std::int64_t n_steps = 0;
};

/// Number of paths in [0, n_paths) that touch the barrier. OpenMP-parallel
/// over paths; `threads` <= 0 uses the OpenMP runtime default. The result
/// does not depend on the thread count or schedule.
std::uint64_t count_crossings(const BarrierWalk& walk, std::uint64_t stream_seed,
                              std::uint64_t n_paths, int threads = 0);

namespace reference {

/// Serial reference: materialises each full path, then tests its minimum.
/// Kept for testing the parallel kernel; must agree with it exactly.
std::uint64_t count_crossings(const BarrierWalk& walk, std::uint64_t stream_seed,
                              std::uint64_t n_paths);

}  // namespace reference

}  // namespace crowdfx::kernels
