#pragma once

// Brute-force references and instance generators for tests. Nothing here
// reuses the distance, MEB or projection code it is meant to check.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "kcmedian/geometry.hpp"
#include "kcmedian/metrics.hpp"

namespace kcmedian::oracle {

/// Minimum over every monotone coupling path of the largest matched distance.
/// Exponential; intended for at most 6 points per side.
double brute_frechet(const Trajectory& a, const Trajectory& b);

/// Minimum over every correspondence (relation covering both sides) of the
/// largest matched distance. Intended for at most 4 points per side.
double brute_hausdorff(const PointSet& a, const PointSet& b);

/// Smallest ball among the circumballs of all subsets of at most d + 1
/// points that contain every point.
Ball brute_min_enclosing_ball(const std::vector<Point>& points);

/// Minimum over splits of t into at most l contiguous blocks of the largest
/// block MEB radius.
double brute_simplification_radius(const Trajectory& t, std::size_t l);

/// Minimum over assignments of the points of s to l groups of the largest
/// group MEB radius.
double brute_l_center_radius(const PointSet& s, std::size_t l);

template <class E>
struct GridMedian {
  E center;
  double cost = 0.0;
  /// The true optimum lies in [cost - slack, cost].
  double slack = 0.0;
  std::size_t lattice_points = 0;
};

/// Best 1-median over centers built from lattice points of the box
/// [lo, hi] with the given spacing: every sequence of at most l lattice
/// points (trajectories) or every set of at most l lattice points (point
/// sets). The box must contain every input point.
///
/// Snapping each vertex of an optimal center to its nearest lattice point
/// moves it by at most spacing * sqrt(d) / 2, which moves every distance by
/// at most that much, so slack = |P| * spacing * sqrt(d) / 2.
GridMedian<Trajectory> grid_1median(const std::vector<Trajectory>& P, std::size_t l, const Point& lo,
                                    const Point& hi, double spacing);
GridMedian<PointSet> grid_1median(const std::vector<PointSet>& P, std::size_t l, const Point& lo, const Point& hi,
                                  double spacing);

/// Smallest box containing every point of every element.
template <class E>
std::pair<Point, Point> bounding_box(const std::vector<E>& elements);

struct AntipodalFamily {
  Trajectory spine;
  std::vector<Trajectory> members;
};

/// Spine p_i = 3 r (i - 1) e_1 and the 2^m trajectories choosing, per
/// vertex, p_i + 0.99 r e_1 or p_i - 0.99 r e_1.
AntipodalFamily antipodal_family(std::size_t m, double r, std::size_t d);

struct PlantedSpec {
  std::vector<std::vector<Point>> spines;
  std::size_t per_cluster = 10;
  std::size_t points_per_element = 10;
  double jitter = 0.1;
  std::uint64_t seed = 1;
};

/// Each element spreads its points over the spine vertices in contiguous,
/// near-equal blocks, each point displaced uniformly within the jitter ball.
template <class E>
struct PlantedInstance {
  std::vector<E> elements;
  std::vector<E> ground_truth_centers;
  double ground_truth_cost = 0.0;
  std::vector<std::size_t> labels;
  PlantedSpec spec;
};

PlantedInstance<Trajectory> planted_trajectories(const PlantedSpec& spec);
PlantedInstance<PointSet> planted_pointsets(const PlantedSpec& spec);

/// Cheapest set of at most k of the given centers, by exhaustive search.
template <class E>
double exhaustive_k_median(const std::vector<E>& P, const std::vector<E>& centers, std::size_t k);

}  // namespace kcmedian::oracle
