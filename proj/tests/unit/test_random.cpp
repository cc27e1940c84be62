#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "kcmedian/random.hpp"

namespace kcmedian {
namespace {

TEST(RandomStream, SameSeedSameSequence) {
  RandomStream a(42);
  RandomStream b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(RandomStream, SplitDependsOnSeedAndTagOnly) {
  RandomStream parent(7);
  const RandomStream early = parent.split(3);
  for (int i = 0; i < 50; ++i) parent.next_u64();
  RandomStream late = parent.split(3);
  RandomStream early_copy = early;
  for (int i = 0; i < 20; ++i) EXPECT_EQ(early_copy.next_u64(), late.next_u64());
  EXPECT_NE(parent.split(3).seed(), parent.split(4).seed());
}

TEST(RandomStream, UniformIndexInRange) {
  RandomStream rng(1);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const std::size_t v = rng.uniform_index(7);
    ASSERT_LT(v, 7U);
    ++hits[v];
  }
  for (int h : hits) EXPECT_GT(h, 800);
  EXPECT_THROW(rng.uniform_index(0), std::invalid_argument);
}

TEST(RandomStream, Uniform01InUnitInterval) {
  RandomStream rng(2);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(RandomStream, DistinctIndicesSortedAndDistinct) {
  RandomStream rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.uniform_index(30);
    const std::size_t k = rng.uniform_index(n + 1);
    const auto v = rng.distinct_indices(n, k);
    ASSERT_EQ(v.size(), k);
    EXPECT_TRUE(std::is_sorted(v.begin(), v.end()));
    EXPECT_EQ(std::set<std::size_t>(v.begin(), v.end()).size(), k);
    for (std::size_t x : v) EXPECT_LT(x, n);
  }
  EXPECT_THROW(rng.distinct_indices(3, 4), std::invalid_argument);
}

}  // namespace
}  // namespace kcmedian
