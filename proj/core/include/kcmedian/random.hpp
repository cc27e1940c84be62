#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace kcmedian {

/// Seedable, splittable random stream.
///
/// A stream is identified by its seed; split(tag) derives a child stream from
/// (seed, tag) only, so the child does not depend on how many values have been
/// drawn from the parent. Recursive branches that derive their streams along
/// their branch path therefore see the same values whatever order (or thread)
/// they run in. All draws are platform independent: the underlying engine is
/// std::mt19937_64 and bounded draws do not go through <random> distributions.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }
  RandomStream split(std::uint64_t tag) const;

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform integer in [0, n). n must be positive.
  std::size_t uniform_index(std::size_t n);
  /// Uniform double in [0, 1).
  double uniform01();
  /// k distinct values from [0, n), in increasing order (Floyd's algorithm).
  std::vector<std::size_t> distinct_indices(std::size_t n, std::size_t k);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace kcmedian
