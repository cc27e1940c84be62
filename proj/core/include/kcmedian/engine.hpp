#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kcmedian/center_space.hpp"
#include "kcmedian/sampling.hpp"

namespace kcmedian {

enum class Mode { weak, strong };

std::string to_string(Mode mode);

/// Zero in an optional numeric field selects its default.
struct ClusterParams {
  std::size_t k = 1;
  double alpha = 0.0;  // default epsilon / (8 k^2)
  SamplingParams sampling;
  Mode mode = Mode::weak;
  std::size_t subset_budget = 32;  // 0: every distinct sub-multiset
  std::size_t repetitions = 0;     // default ceil(ln 20 * (5 / (1 - delta))^k), at most 256
  std::size_t sample_size = 0;     // default ceil(2 m / alpha)
  std::size_t strong_m = 0;        // strong mode subset size; default sampling.m()
  std::uint64_t seed = 0;
  std::size_t threads = 1;  // workers for the top-level sampling phase

  double effective_alpha() const;
  std::size_t effective_repetitions() const;
  /// Size m of the sample subsets handed to the candidate generator.
  std::size_t subset_size() const;
  std::size_t effective_sample_size() const;

  void validate() const;
};

std::size_t default_repetitions(double delta, std::size_t k);

/// Calls and candidates per (depth, phase); phase is one of "leaf", "base",
/// "prune", "sample".
struct TraceEntry {
  std::size_t depth = 0;
  std::string phase;
  std::uint64_t calls = 0;
  std::uint64_t candidates = 0;
};

template <class E>
struct ClusterOutcome {
  std::vector<E> centers;
  double cost = 0.0;  // against the full input
};

template <class E>
struct ClusteringResult {
  std::vector<E> centers;
  std::vector<std::size_t> assignment;  // per input element, index into centers
  std::vector<double> distances;        // per input element, distance to its center
  double total_cost = 0.0;
  OperationCounter counters;
  std::vector<TraceEntry> trace;
  std::size_t repetitions = 0;
  std::size_t best_repetition = 0;
  std::size_t sample_size = 0;
  std::size_t subset_size = 0;
  std::size_t padded_centers = 0;  // centers added after the search to reach min(k, n)
};

/// Pruning step: drops the floor(|view| / 2) elements of `view` closest to
/// the current centers (ties by element index) and returns the rest in
/// ascending index order. `nearest` is indexed by element.
std::vector<std::size_t> prune_half(const std::vector<std::size_t>& view, const std::vector<double>& nearest);

/// Sum over P of the distance to the nearest center. Throws ParameterError
/// when centers is empty.
template <class E>
double evaluate_cost(std::span<const E> P, std::span<const E> centers);

/// One run of the recursive search from center set C_bar with k_remaining
/// centers to place. Costs are measured against all of P.
template <class Space>
ClusterOutcome<typename Space::Element> cluster(const Space& space, std::span<const typename Space::Element> P,
                                               std::size_t k_remaining,
                                               std::vector<typename Space::Element> C_bar,
                                               const ClusterParams& params, const RandomStream& rng,
                                               OperationCounter& counter);

/// Repeated search; keeps the cheapest center set, tops it up to min(k, n)
/// centers and assigns every element to its nearest center (lowest index on
/// ties). extra_candidates are offered in every sampling phase.
template <class Space>
ClusteringResult<typename Space::Element> run(const Space& space, std::span<const typename Space::Element> P,
                                             const ClusterParams& params,
                                             std::span<const typename Space::Element> extra_candidates = {});

#define KCMEDIAN_ENGINE_EXTERN(Space)                                                                          \
  extern template ClusterOutcome<Space::Element> cluster<Space>(                                              \
      const Space&, std::span<const Space::Element>, std::size_t, std::vector<Space::Element>,                \
      const ClusterParams&, const RandomStream&, OperationCounter&);                                          \
  extern template ClusteringResult<Space::Element> run<Space>(                                                \
      const Space&, std::span<const Space::Element>, const ClusterParams&, std::span<const Space::Element>);

KCMEDIAN_ENGINE_EXTERN(TrajectorySpace)
KCMEDIAN_ENGINE_EXTERN(PointSetSpace)
KCMEDIAN_ENGINE_EXTERN(FiniteTrajectorySpace)
KCMEDIAN_ENGINE_EXTERN(FinitePointSetSpace)
#undef KCMEDIAN_ENGINE_EXTERN

extern template double evaluate_cost<Trajectory>(std::span<const Trajectory>, std::span<const Trajectory>);
extern template double evaluate_cost<PointSet>(std::span<const PointSet>, std::span<const PointSet>);

}  // namespace kcmedian
