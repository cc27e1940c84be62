#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace kcmedian {

class RandomStream;

/// Absolute tolerance used by every geometric predicate on distances.
inline constexpr double kDistanceTolerance = 1e-9;

/// A point in R^d. Coordinates are validated finite on construction.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const noexcept { return coords_[i]; }
  double& operator[](std::size_t i) noexcept { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

/// Throws InputError when the dimensions differ.
double euclidean_distance(const Point& a, const Point& b);
double squared_distance(const Point& a, const Point& b);

struct Ball {
  Point center;
  double radius = 0.0;

  bool contains(const Point& p, double tolerance = kDistanceTolerance) const;
};

/// Smallest enclosing ball (move-to-front Welzl with Gaertner's incremental
/// support update). The returned radius is the largest distance from the
/// returned center to an input point, so containment is exact.
Ball min_enclosing_ball(std::span<const Point> points);

/// Axis-aligned lattice with spacing r'/sqrt(d), clipped to the ball of radius
/// r + r'/2. Every point within r of the origin lies within r'/2 of a lattice
/// offset. When r' >= r the lattice degenerates to the origin alone.
///
/// Offsets are relative to the ball center, so one grid serves every center
/// with the same (d, r, r').
class BallGrid {
 public:
  BallGrid(std::size_t dim, double r, double r_prime);

  std::size_t dim() const noexcept { return dim_; }
  double spacing() const noexcept { return spacing_; }
  /// Lattice steps per half axis; the bounding box holds (2 * steps + 1)^d points.
  std::size_t steps() const noexcept { return steps_; }
  std::size_t size() const noexcept { return size_; }
  /// (2 * ceil(r * sqrt(d) / r') + 1)^d, or 1 for the degenerate grid.
  double size_bound() const noexcept;

  /// Materialized offsets, in lexicographic lattice order.
  const std::vector<Point>& offsets() const;
  /// Uniform lattice offset, drawn without materializing the lattice.
  Point sample_offset(RandomStream& rng) const;
  /// center + offset.
  static Point translate(const Point& center, const Point& offset);

 private:
  std::size_t count_within(std::size_t dims_left, double remaining_sq) const;

  std::size_t dim_;
  double r_;
  double r_prime_;
  double spacing_ = 0.0;
  std::size_t steps_ = 0;
  double keep_sq_ = 0.0;  // squared clip radius in lattice units
  std::size_t size_ = 1;
  mutable std::vector<Point> offsets_;
};

/// A finite r'-cover of the Euclidean ball B(center, r).
/// Throws ParameterError when r < 0 or r_prime <= 0.
std::vector<Point> euclidean_ball_cover(const Point& center, double r, double r_prime);

}  // namespace kcmedian
