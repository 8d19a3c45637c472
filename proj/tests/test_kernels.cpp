#include <gtest/gtest.h>

#include <cmath>

#include "crowdfx/kernels.hpp"
#include "crowdfx/rng.hpp"

namespace {

using namespace crowdfx;
using kernels::BarrierWalk;

// Known-answer vectors published with Random123.
TEST(Philox4x32, KnownAnswers) {
  using C = Philox4x32::Counter;
  using K = Philox4x32::Key;
  EXPECT_EQ(Philox4x32::block(C{0, 0, 0, 0}, K{0, 0}),
            (C{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
  EXPECT_EQ(Philox4x32::block(C{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                              K{0xffffffffu, 0xffffffffu}),
            (C{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
  EXPECT_EQ(Philox4x32::block(C{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                              K{0xa4093822u, 0x299f31d0u}),
            (C{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(PathNormals, MomentsAreStandardNormal) {
  double sum = 0.0;
  double sum2 = 0.0;
  double sum4 = 0.0;
  const int paths = 2000;
  const int per_path = 100;
  for (int p = 0; p < paths; ++p) {
    PathNormals z(99, static_cast<std::uint64_t>(p));
    for (int i = 0; i < per_path; ++i) {
      const double v = z.next();
      sum += v;
      sum2 += v * v;
      sum4 += v * v * v * v;
    }
  }
  const double n = paths * per_path;
  EXPECT_NEAR(sum / n, 0.0, 4.0 / std::sqrt(n));
  EXPECT_NEAR(sum2 / n, 1.0, 4.0 * std::sqrt(2.0 / n));
  EXPECT_NEAR(sum4 / n, 3.0, 4.0 * std::sqrt(96.0 / n));
}

TEST(PathNormals, StreamsDependOnlyOnSeedAndPath) {
  PathNormals a(5, 17);
  PathNormals b(5, 17);
  PathNormals other_path(5, 18);
  PathNormals other_seed(6, 17);
  const double first = a.next();
  EXPECT_EQ(first, b.next());
  EXPECT_NE(first, other_path.next());
  EXPECT_NE(first, other_seed.next());
}

TEST(Kernels, ParallelMatchesSerialReferenceExactly) {
  const BarrierWalk walks[] = {
      {1.0, 0.01, 0.85, 60},
      {1.0, 0.01, 0.95, 250},
      {1.0, 0.05, 0.99, 5},
      {2.0, 0.3, 1.0, 1},
  };
  for (const auto& w : walks) {
    const auto ref = kernels::reference::count_crossings(w, 1234, 20000);
    for (int threads : {1, 2, 3, 8}) {
      EXPECT_EQ(kernels::count_crossings(w, 1234, 20000, threads), ref)
          << "threads=" << threads << " barrier=" << w.barrier;
    }
  }
}

TEST(Kernels, ZeroStepsNeverCross) {
  const BarrierWalk w{1.0, 0.5, 0.9, 0};
  EXPECT_EQ(kernels::count_crossings(w, 1, 1000), 0u);
  EXPECT_EQ(kernels::reference::count_crossings(w, 1, 1000), 0u);
}

}  // namespace
