#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "kcmedian/center_space.hpp"
#include "kcmedian/random.hpp"

namespace kcmedian {

struct SamplingParams {
  double epsilon = 0.4;
  double delta = 0.95;
  /// Accept epsilon, delta in (0, 1) instead of the weak-sampling ranges.
  /// delta1 must still be positive when candidates come from Gamma.
  bool allow_loose = false;
  /// Largest cover radius ratio R / r' handed to a cover; 0 disables the cap.
  /// A capped request keeps the geometric mean of R and r'.
  double cover_ratio_cap = 64.0;
  /// Covers with more elements than this are subsampled uniformly (with
  /// replacement) down to this many draws; 0 enumerates every element.
  std::size_t cover_budget = 16;

  double epsilon1() const noexcept { return epsilon / 4.0; }
  double delta1() const noexcept { return epsilon / 2.0 - 1.8 * (1.0 - delta); }
  /// 1 + ceil(4 / epsilon).
  std::size_t m() const noexcept;

  /// Throws ParameterError naming the violated constraint.
  void validate(bool needs_delta1) const;
};

/// Operation counts in the unit-cost model: one distance evaluation or one
/// projection onto C counts as one operation.
struct OperationCounter {
  std::uint64_t distance_evals = 0;
  std::uint64_t projection_evals = 0;
  double wall_ms = 0.0;

  OperationCounter& operator+=(const OperationCounter& other) noexcept {
    distance_evals += other.distance_evals;
    projection_evals += other.projection_evals;
    return *this;
  }
};

struct CoverRadii {
  double r = 0.0;        // 2b / delta1, possibly capped
  double r_prime = 0.0;  // epsilon a / 2, possibly capped
  double requested_ratio = 0.0;
  bool capped = false;
};

/// Radii of the cover used around an anchor, given bounds a <= b on the mean
/// distance to the optimal 1-median.
CoverRadii cover_radii(double a, double b, const SamplingParams& params);

/// Uncapped cover ratio that Gamma requests, 2048 / (delta1 eps^5), computed
/// through cover_radii.
double gamma_cover_ratio(const SamplingParams& params);

/// `size` independent uniform draws from [0, population).
std::vector<std::size_t> uniform_indices(std::size_t population, std::size_t size, RandomStream& rng);

template <class E>
std::vector<E> uniform_multiset(std::span<const E> population, std::size_t size, RandomStream& rng) {
  if (population.empty()) throw InputError("sampling from an empty population");
  std::vector<E> out;
  out.reserve(size);
  for (std::size_t i : uniform_indices(population.size(), size, rng)) out.push_back(population[i]);
  return out;
}

/// Removes repeated elements, keeping the first occurrence of each.
template <class E>
void dedupe_elements(std::vector<E>& elements);

/// {anchor} followed by the distinct projections of an (eps a / 2)-cover of
/// the ball of radius 2b / delta1 around the anchor. Returns {anchor} when
/// the cover would be a single point.
template <class Space>
std::vector<typename Space::Element> candidate_set_from_anchor(const Space& space,
                                                              const typename Space::Element& anchor, double a,
                                                              double b, const SamplingParams& params,
                                                              RandomStream& rng, OperationCounter& counter);

/// Gamma applied to a drawn sample: Q is the multiset of m - 1 elements, q the
/// extra one.
template <class Space>
std::vector<typename Space::Element> gamma_from_sample(const Space& space,
                                                      std::span<const typename Space::Element* const> Q,
                                                      const typename Space::Element& q,
                                                      const SamplingParams& params, RandomStream& rng,
                                                      OperationCounter& counter);

/// Draws Q (m - 1 elements) and q uniformly from the view and applies Gamma.
template <class Space>
std::vector<typename Space::Element> gamma_candidates(const Space& space,
                                                     std::span<const typename Space::Element> view,
                                                     const SamplingParams& params, RandomStream& rng,
                                                     OperationCounter& counter);

#define KCMEDIAN_SAMPLING_EXTERN(Space)                                                                       \
  extern template std::vector<Space::Element> candidate_set_from_anchor<Space>(                              \
      const Space&, const Space::Element&, double, double, const SamplingParams&, RandomStream&,             \
      OperationCounter&);                                                                                     \
  extern template std::vector<Space::Element> gamma_from_sample<Space>(                                      \
      const Space&, std::span<const Space::Element* const>, const Space::Element&, const SamplingParams&,    \
      RandomStream&, OperationCounter&);                                                                      \
  extern template std::vector<Space::Element> gamma_candidates<Space>(                                       \
      const Space&, std::span<const Space::Element>, const SamplingParams&, RandomStream&, OperationCounter&);

KCMEDIAN_SAMPLING_EXTERN(TrajectorySpace)
KCMEDIAN_SAMPLING_EXTERN(PointSetSpace)
KCMEDIAN_SAMPLING_EXTERN(FiniteTrajectorySpace)
KCMEDIAN_SAMPLING_EXTERN(FinitePointSetSpace)
#undef KCMEDIAN_SAMPLING_EXTERN

extern template void dedupe_elements<Trajectory>(std::vector<Trajectory>&);
extern template void dedupe_elements<PointSet>(std::vector<PointSet>&);

}  // namespace kcmedian
