#include "kcmedian/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kcmedian/errors.hpp"

namespace kcmedian {

namespace {

void check_points(const std::vector<Point>& points, const char* what) {
  if (points.empty()) throw InputError(std::string(what) + " must contain at least one point");
  const std::size_t d = points.front().dim();
  if (d == 0) throw InputError(std::string(what) + " has a zero-dimensional point");
  for (const Point& p : points) {
    if (p.dim() != d) throw InputError(std::string(what) + " mixes point dimensions");
  }
}

void check_same_dim(std::span<const Point> a, std::span<const Point> b) {
  if (a.empty() || b.empty()) throw InputError("distance between empty elements");
  if (a.front().dim() != b.front().dim()) throw InputError("dimension mismatch between elements");
}

double directed_sq(std::span<const Point> from, std::span<const Point> to) {
  double worst = 0.0;
  for (const Point& p : from) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point& q : to) {
      best = std::min(best, squared_distance(p, q));
      if (best <= worst) break;  // cannot raise the max
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

Trajectory::Trajectory(std::string id, std::vector<Point> points)
    : id_(std::move(id)), points_(std::move(points)) {
  check_points(points_, "trajectory");
}

PointSet::PointSet(std::string id, std::vector<Point> points) : id_(std::move(id)) {
  check_points(points, "point set");
  points_.reserve(points.size());
  const double tol_sq = kDistanceTolerance * kDistanceTolerance;
  for (Point& p : points) {
    const bool seen = std::any_of(points_.begin(), points_.end(),
                                  [&](const Point& q) { return squared_distance(p, q) <= tol_sq; });
    if (!seen) points_.push_back(std::move(p));
  }
}

double discrete_frechet(std::span<const Point> a, std::span<const Point> b) {
  check_same_dim(a, b);
  if (a.size() < b.size()) std::swap(a, b);
  // Rolling row over the shorter sequence, on squared distances.
  std::vector<double> row(b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    double diag = 0.0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double dij = squared_distance(a[i], b[j]);
      double reach;
      if (i == 0 && j == 0) {
        reach = 0.0;
      } else if (i == 0) {
        reach = row[j - 1];
      } else if (j == 0) {
        reach = row[0];
      } else {
        reach = std::min({row[j], row[j - 1], diag});
      }
      diag = row[j];
      row[j] = std::max(dij, reach);
    }
  }
  return std::sqrt(row.back());
}

double discrete_frechet(const Trajectory& a, const Trajectory& b) {
  return discrete_frechet(std::span<const Point>(a.points()), std::span<const Point>(b.points()));
}

double hausdorff(std::span<const Point> a, std::span<const Point> b) {
  check_same_dim(a, b);
  return std::sqrt(std::max(directed_sq(a, b), directed_sq(b, a)));
}

double hausdorff(const PointSet& a, const PointSet& b) {
  return hausdorff(std::span<const Point>(a.points()), std::span<const Point>(b.points()));
}

}  // namespace kcmedian
