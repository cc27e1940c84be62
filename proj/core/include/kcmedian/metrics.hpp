#pragma once

#include <span>
#include <string>
#include <vector>

#include "kcmedian/geometry.hpp"

namespace kcmedian {

/// Ordered, nonempty sequence of points of one dimension.
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(std::string id, std::vector<Point> points);
  explicit Trajectory(std::vector<Point> points) : Trajectory(std::string(), std::move(points)) {}

  const std::string& id() const noexcept { return id_; }
  const std::vector<Point>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  std::size_t dim() const noexcept { return points_.empty() ? 0 : points_.front().dim(); }

  /// Compares vertices only; ids are labels.
  friend bool operator==(const Trajectory& a, const Trajectory& b) { return a.points_ == b.points_; }

 private:
  std::string id_;
  std::vector<Point> points_;
};

/// Nonempty point set. Points closer than kDistanceTolerance to an earlier
/// point are dropped on construction; the first occurrence is kept.
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::string id, std::vector<Point> points);
  explicit PointSet(std::vector<Point> points) : PointSet(std::string(), std::move(points)) {}

  const std::string& id() const noexcept { return id_; }
  const std::vector<Point>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  std::size_t dim() const noexcept { return points_.empty() ? 0 : points_.front().dim(); }

  friend bool operator==(const PointSet& a, const PointSet& b) { return a.points_ == b.points_; }

 private:
  std::string id_;
  std::vector<Point> points_;
};

/// Discrete Frechet distance, O(|a| |b|) time and O(min(|a|, |b|)) memory.
double discrete_frechet(std::span<const Point> a, std::span<const Point> b);
double discrete_frechet(const Trajectory& a, const Trajectory& b);

/// max of the two directed nearest-point distances.
double hausdorff(std::span<const Point> a, std::span<const Point> b);
double hausdorff(const PointSet& a, const PointSet& b);

inline double element_distance(const Trajectory& a, const Trajectory& b) { return discrete_frechet(a, b); }
inline double element_distance(const PointSet& a, const PointSet& b) { return hausdorff(a, b); }

}  // namespace kcmedian
