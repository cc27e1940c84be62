#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "kcmedian/geometry.hpp"
#include "kcmedian/metrics.hpp"
#include "kcmedian/random.hpp"

namespace kcmedian::testing {

inline double uniform(RandomStream& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform01(); }

inline Point random_point(RandomStream& rng, std::size_t d, double lo = -1.0, double hi = 1.0) {
  std::vector<double> c(d);
  for (double& x : c) x = uniform(rng, lo, hi);
  return Point(std::move(c));
}

/// Uniform point in the ball of radius r around center (rejection).
inline Point point_in_ball(RandomStream& rng, const Point& center, double r) {
  const std::size_t d = center.dim();
  while (true) {
    std::vector<double> off(d);
    double sq = 0.0;
    for (double& x : off) {
      x = uniform(rng, -r, r);
      sq += x * x;
    }
    if (sq <= r * r) {
      for (std::size_t i = 0; i < d; ++i) off[i] += center[i];
      return Point(std::move(off));
    }
  }
}

inline std::vector<Point> random_points(RandomStream& rng, std::size_t n, std::size_t d, double lo = -1.0,
                                        double hi = 1.0) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_point(rng, d, lo, hi));
  return out;
}

inline Trajectory random_trajectory(RandomStream& rng, std::size_t max_len, std::size_t d = 2) {
  return Trajectory(random_points(rng, 1 + rng.uniform_index(max_len), d));
}

inline PointSet random_pointset(RandomStream& rng, std::size_t max_size, std::size_t d = 2) {
  return PointSet(random_points(rng, 1 + rng.uniform_index(max_size), d));
}


/// Trajectory of at most l vertices within d_F <= r of center. Half of the
/// draws move each vertex by at most r / 2; the rest pick a random length
/// and a random non-decreasing vertex assignment, rejecting until the
/// distance holds.
inline Trajectory perturbed_trajectory(RandomStream& rng, const Trajectory& center, std::size_t l, double r) {
  const auto& c = center.points();
  if (rng.uniform_index(2) == 0) {
    std::vector<Point> pts;
    for (const Point& p : c) pts.push_back(point_in_ball(rng, p, r / 2.0));
    return Trajectory(std::move(pts));
  }
  while (true) {
    const std::size_t len = 1 + rng.uniform_index(l);
    std::vector<std::size_t> owner(len);
    for (std::size_t& o : owner) o = rng.uniform_index(c.size());
    std::sort(owner.begin(), owner.end());
    std::vector<Point> pts;
    for (std::size_t o : owner) pts.push_back(point_in_ball(rng, c[o], r));
    Trajectory t(std::move(pts));
    if (discrete_frechet(center, t) <= r) return t;
  }
}

/// Point set of at most l points within d_H <= r of center, built the same
/// two ways.
inline PointSet perturbed_pointset(RandomStream& rng, const PointSet& center, std::size_t l, double r) {
  const auto& c = center.points();
  if (rng.uniform_index(2) == 0) {
    std::vector<Point> pts;
    for (const Point& p : c) pts.push_back(point_in_ball(rng, p, r));
    return PointSet(std::move(pts));
  }
  while (true) {
    const std::size_t size = 1 + rng.uniform_index(l);
    std::vector<Point> pts;
    for (std::size_t i = 0; i < size; ++i) pts.push_back(point_in_ball(rng, c[rng.uniform_index(c.size())], r));
    PointSet s(std::move(pts));
    if (hausdorff(center, s) <= r) return s;
  }
}

/// Streams the cover once and counts targets with no element within
/// r_prime. Stops as soon as every target is matched.
template <class Cover, class E>
std::size_t unmatched_targets(Cover& cover, const std::vector<E>& targets, double r_prime) {
  std::vector<std::size_t> open(targets.size());
  for (std::size_t i = 0; i < open.size(); ++i) open[i] = i;
  while (!open.empty()) {
    auto element = cover.next();
    if (!element) break;
    std::vector<std::size_t> still;
    for (std::size_t i : open) {
      if (element_distance(targets[i], *element) > r_prime + kDistanceTolerance) still.push_back(i);
    }
    open = std::move(still);
  }
  return open.size();
}

}  // namespace kcmedian::testing
