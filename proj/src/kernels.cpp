#include "crowdfx/kernels.hpp"

#include <algorithm>
#include <vector>

#include <omp.h>

#include "crowdfx/rng.hpp"

namespace crowdfx::kernels {

namespace {

bool path_crosses(const BarrierWalk& walk, std::uint64_t stream_seed, std::uint64_t path) {
  PathNormals normals(stream_seed, path);
  double x = walk.x0;
  for (std::int64_t step = 0; step < walk.n_steps; ++step) {
    x = x + walk.sigma * normals.next();
    if (x <= walk.barrier) return true;
  }
  return false;
}

}  // namespace

std::uint64_t count_crossings(const BarrierWalk& walk, std::uint64_t stream_seed,
                              std::uint64_t n_paths, int threads) {
  const int n_threads = threads > 0 ? threads : omp_get_max_threads();
  const auto n = static_cast<std::int64_t>(n_paths);
  std::uint64_t hits = 0;
#pragma omp parallel for num_threads(n_threads) reduction(+ : hits) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    if (path_crosses(walk, stream_seed, static_cast<std::uint64_t>(i))) ++hits;
  }
  return hits;
}

namespace reference {

std::uint64_t count_crossings(const BarrierWalk& walk, std::uint64_t stream_seed,
                              std::uint64_t n_paths) {
  std::uint64_t hits = 0;
  std::vector<double> path(static_cast<std::size_t>(walk.n_steps));
  for (std::uint64_t i = 0; i < n_paths; ++i) {
    PathNormals normals(stream_seed, i);
    double x = walk.x0;
    for (auto& level : path) {
      x = x + walk.sigma * normals.next();
      level = x;
    }
    if (!path.empty() && *std::min_element(path.begin(), path.end()) <= walk.barrier) ++hits;
  }
  return hits;
}

}  // namespace reference

}  // namespace crowdfx::kernels
