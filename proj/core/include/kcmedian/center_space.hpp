#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "kcmedian/cover.hpp"
#include "kcmedian/errors.hpp"
#include "kcmedian/metrics.hpp"

namespace kcmedian {

enum class SpaceKind { trajectory_l, pointset_l, finite };

std::string to_string(SpaceKind kind);

struct CenterSpaceDescriptor {
  SpaceKind kind = SpaceKind::trajectory_l;
  std::size_t l = 0;               // geometric kinds
  std::size_t explicit_count = 0;  // finite kind
};

struct TrajectoryProjection {
  Trajectory center;
  double radius = 0.0;  // d_F(t, center)
};

/// Closest trajectory of at most l vertices under d_F.
///
/// Splits t into min(l, |t|) contiguous blocks minimizing the largest block
/// MEB radius and returns the block MEB centers in order. Interval radii are
/// tabulated (O(m^3)) and the split is a minimax DP (O(m^2 l)); ties go to
/// the earliest split point.
TrajectoryProjection simplify_trajectory(const Trajectory& t, std::size_t l);
Trajectory project_to_trajectory_centers(const Trajectory& t, std::size_t l);

struct PointSetProjection {
  PointSet center;
  double radius = 0.0;  // d_H(s, center)
};

/// Exact Euclidean l-center of s.
///
/// Candidate balls are the MEBs of all subsets of at most d + 1 points. The
/// smallest feasible candidate radius is found by binary search; feasibility
/// is a depth-first cover search that branches on the first uncovered point.
PointSetProjection solve_l_center(const PointSet& s, std::size_t l);
PointSet project_to_pointset_centers(const PointSet& s, std::size_t l);

/// Trajectories with at most l vertices, under d_F.
class TrajectorySpace {
 public:
  using Element = Trajectory;
  using Cover = TrajectoryCover;

  explicit TrajectorySpace(std::size_t l);

  std::size_t l() const noexcept { return l_; }
  CenterSpaceDescriptor descriptor() const { return {SpaceKind::trajectory_l, l_, 0}; }
  bool contains(const Trajectory& t) const noexcept { return t.size() <= l_; }
  double distance(const Trajectory& a, const Trajectory& b) const { return discrete_frechet(a, b); }
  Trajectory project(const Trajectory& t) const { return project_to_trajectory_centers(t, l_); }
  TrajectoryCover cover(const Trajectory& center, double r, double r_prime) const {
    return TrajectoryCover(center, l_, r, r_prime);
  }

 private:
  std::size_t l_;
};

/// Point sets with at most l points, under d_H.
class PointSetSpace {
 public:
  using Element = PointSet;
  using Cover = PointSetCover;

  explicit PointSetSpace(std::size_t l);

  std::size_t l() const noexcept { return l_; }
  CenterSpaceDescriptor descriptor() const { return {SpaceKind::pointset_l, l_, 0}; }
  bool contains(const PointSet& s) const noexcept { return s.size() <= l_; }
  double distance(const PointSet& a, const PointSet& b) const { return hausdorff(a, b); }
  PointSet project(const PointSet& s) const { return project_to_pointset_centers(s, l_); }
  PointSetCover cover(const PointSet& center, double r, double r_prime) const {
    return PointSetCover(center, l_, r, r_prime);
  }

 private:
  std::size_t l_;
};

/// Index of the center minimizing the summed distance to the sample; ties go
/// to the lowest index.
template <class E>
std::size_t finite_space_1median(std::span<const E> sample, std::span<const E> centers) {
  if (sample.empty()) throw InputError("1-median of an empty sample");
  if (centers.empty()) throw ParameterError("1-median over an empty center list");
  std::size_t best = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centers.size(); ++c) {
    double cost = 0.0;
    for (const E& s : sample) cost += element_distance(s, centers[c]);
    if (cost < best_cost) {
      best_cost = cost;
      best = c;
    }
  }
  return best;
}

/// An explicit finite center set C under the element metric.
template <class E>
class FiniteSpace {
 public:
  using Element = E;
  using Cover = FiniteCover<E>;

  explicit FiniteSpace(std::vector<E> centers) : centers_(std::move(centers)) {
    if (centers_.empty()) throw ParameterError("finite center space needs at least one center");
    for (const E& c : centers_) {
      if (c.dim() != centers_.front().dim()) throw InputError("finite center space mixes dimensions");
    }
  }

  const std::vector<E>& centers() const noexcept { return centers_; }
  CenterSpaceDescriptor descriptor() const { return {SpaceKind::finite, 0, centers_.size()}; }
  double distance(const E& a, const E& b) const { return element_distance(a, b); }

  std::size_t nearest_index(const E& x) const {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centers_.size(); ++c) {
      const double dc = element_distance(x, centers_[c]);
      if (dc < best_d) {
        best_d = dc;
        best = c;
      }
    }
    return best;
  }

  E project(const E& x) const { return centers_[nearest_index(x)]; }

  FiniteCover<E> cover(const E& center, double r, double r_prime) const {
    std::vector<E> members;
    for (const E& c : centers_) {
      if (element_distance(center, c) <= r + kDistanceTolerance) members.push_back(c);
    }
    return FiniteCover<E>(std::move(members), r, r_prime);
  }

 private:
  std::vector<E> centers_;
};

using FiniteTrajectorySpace = FiniteSpace<Trajectory>;
using FinitePointSetSpace = FiniteSpace<PointSet>;

}  // namespace kcmedian
