#include "kcmedian/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>
#include <string>

#include "kcmedian/errors.hpp"
#include "kcmedian/random.hpp"

namespace kcmedian {

namespace {

void check_finite(std::span<const double> coords) {
  if (coords.empty()) throw InputError("point must have at least one coordinate");
  for (double c : coords) {
    if (!std::isfinite(c)) throw InputError("point coordinate is not finite");
  }
}

// Incremental miniball support set (Gaertner, "Fast and robust smallest
// enclosing balls", ESA 1999). Holds up to d + 1 affinely independent points.
class SupportBasis {
 public:
  explicit SupportBasis(std::size_t d)
      : d_(d),
        q0_(d),
        centers_(d + 1, std::vector<double>(d)),
        sqr_radii_(d + 1),
        v_(d + 1, std::vector<double>(d)),
        a_(d + 1, std::vector<double>(d + 1)),
        z_(d + 1),
        f_(d + 1),
        current_center_(d) {}

  std::size_t size() const { return m_; }
  std::size_t capacity() const { return d_ + 1; }
  const std::vector<double>& center() const { return current_center_; }

  double excess(const Point& p) const {
    double e = -current_sqr_radius_;
    for (std::size_t i = 0; i < d_; ++i) {
      const double t = p[i] - current_center_[i];
      e += t * t;
    }
    return e;
  }

  bool push(const Point& p) {
    if (m_ == 0) {
      for (std::size_t i = 0; i < d_; ++i) q0_[i] = centers_[0][i] = p[i];
      sqr_radii_[0] = 0.0;
    } else {
      std::vector<double> qm(d_);
      for (std::size_t i = 0; i < d_; ++i) qm[i] = p[i] - q0_[i];
      for (std::size_t i = 1; i < m_; ++i) {
        double dot = 0.0;
        for (std::size_t j = 0; j < d_; ++j) dot += v_[i][j] * qm[j];
        a_[m_][i] = 2.0 * dot / z_[i];
      }
      for (std::size_t j = 0; j < d_; ++j) {
        double t = qm[j];
        for (std::size_t i = 1; i < m_; ++i) t -= a_[m_][i] * v_[i][j];
        v_[m_][j] = t;
      }
      double zm = 0.0;
      for (std::size_t j = 0; j < d_; ++j) zm += v_[m_][j] * v_[m_][j];
      zm *= 2.0;
      // affinely dependent on the current support
      if (zm <= 0.0 || zm < 1e-20 * current_sqr_radius_) return false;
      z_[m_] = zm;
      double e = -sqr_radii_[m_ - 1];
      for (std::size_t j = 0; j < d_; ++j) {
        const double t = p[j] - centers_[m_ - 1][j];
        e += t * t;
      }
      f_[m_] = e / zm;
      for (std::size_t j = 0; j < d_; ++j) {
        centers_[m_][j] = centers_[m_ - 1][j] + f_[m_] * v_[m_][j];
      }
      sqr_radii_[m_] = sqr_radii_[m_ - 1] + e * f_[m_] / 2.0;
    }
    current_center_ = centers_[m_];
    current_sqr_radius_ = sqr_radii_[m_];
    ++m_;
    return true;
  }

  void pop() { --m_; }

 private:
  std::size_t d_;
  std::size_t m_ = 0;
  std::vector<double> q0_;
  std::vector<std::vector<double>> centers_;
  std::vector<double> sqr_radii_;
  std::vector<std::vector<double>> v_;
  std::vector<std::vector<double>> a_;
  std::vector<double> z_;
  std::vector<double> f_;
  std::vector<double> current_center_;
  double current_sqr_radius_ = -1.0;
};

class MoveToFront {
 public:
  MoveToFront(std::list<Point> points, std::size_t d)
      : points_(std::move(points)), basis_(d) {}

  std::vector<double> solve() {
    build(points_.end());
    return basis_.center();
  }

 private:
  void build(std::list<Point>::iterator end) {
    if (basis_.size() == basis_.capacity()) return;
    for (auto it = points_.begin(); it != end;) {
      auto next = std::next(it);
      if (basis_.excess(*it) > 1e-24 && basis_.push(*it)) {
        build(it);
        basis_.pop();
        points_.splice(points_.begin(), points_, it);
      }
      it = next;
    }
  }

  std::list<Point> points_;
  SupportBasis basis_;
};

}  // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) { check_finite(coords_); }

Point::Point(std::initializer_list<double> coords) : coords_(coords) { check_finite(coords_); }

double squared_distance(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) {
    throw InputError("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                     std::to_string(b.dim()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double t = a[i] - b[i];
    sum += t * t;
  }
  return sum;
}

double euclidean_distance(const Point& a, const Point& b) { return std::sqrt(squared_distance(a, b)); }

bool Ball::contains(const Point& p, double tolerance) const {
  return euclidean_distance(center, p) <= radius + tolerance;
}

Ball min_enclosing_ball(std::span<const Point> points) {
  if (points.empty()) throw InputError("min_enclosing_ball: empty point list");
  const std::size_t d = points.front().dim();
  for (const Point& p : points) {
    if (p.dim() != d) throw InputError("min_enclosing_ball: mixed dimensions");
  }
  if (points.size() == 1) return Ball{points.front(), 0.0};

  // Fixed-seed shuffle: expected linear time, reproducible output.
  std::vector<Point> order(points.begin(), points.end());
  RandomStream rng(0x6d65625f73656564ULL);
  for (std::size_t i = order.size() - 1; i > 0; --i) {
    std::swap(order[i], order[rng.uniform_index(i + 1)]);
  }
  MoveToFront solver(std::list<Point>(order.begin(), order.end()), d);
  Point center(solver.solve());

  double max_sq = 0.0;
  for (const Point& p : points) max_sq = std::max(max_sq, squared_distance(center, p));
  return Ball{std::move(center), std::sqrt(max_sq)};
}

BallGrid::BallGrid(std::size_t dim, double r, double r_prime) : dim_(dim), r_(r), r_prime_(r_prime) {
  if (dim == 0) throw ParameterError("BallGrid: dimension must be positive");
  if (!(r >= 0.0) || !std::isfinite(r)) throw ParameterError("ball cover: r must be finite and >= 0");
  if (!(r_prime > 0.0) || !std::isfinite(r_prime)) {
    throw ParameterError("ball cover: r' must be finite and > 0");
  }
  if (r == 0.0 || r_prime >= r) return;  // the center alone covers the ball

  spacing_ = r_prime / std::sqrt(static_cast<double>(dim));
  const double per_axis = r / spacing_;
  steps_ = static_cast<std::size_t>(std::ceil(per_axis - 1e-9));
  const double keep = (r + 0.5 * r_prime + kDistanceTolerance) / spacing_;
  keep_sq_ = keep * keep;
  size_ = count_within(dim_, keep_sq_);
}

double BallGrid::size_bound() const noexcept {
  return std::pow(2.0 * static_cast<double>(steps_) + 1.0, static_cast<double>(dim_));
}

std::size_t BallGrid::count_within(std::size_t dims_left, double remaining_sq) const {
  const auto n = static_cast<long long>(steps_);
  if (dims_left == 1) {
    const auto reach = static_cast<long long>(std::floor(std::sqrt(remaining_sq)));
    return static_cast<std::size_t>(2 * std::min(n, reach) + 1);
  }
  std::size_t total = 0;
  for (long long i = -n; i <= n; ++i) {
    const double left = remaining_sq - static_cast<double>(i * i);
    if (left < 0.0) continue;
    total += count_within(dims_left - 1, left);
  }
  return total;
}

const std::vector<Point>& BallGrid::offsets() const {
  // Lazily materialized; the first call must not race with another.
  if (!offsets_.empty()) return offsets_;
  offsets_.reserve(size_);
  if (steps_ == 0) {
    offsets_.emplace_back(std::vector<double>(dim_, 0.0));
    return offsets_;
  }
  const auto n = static_cast<long long>(steps_);
  std::vector<long long> idx(dim_, -n);
  while (true) {
    double sq = 0.0;
    for (long long v : idx) sq += static_cast<double>(v * v);
    if (sq <= keep_sq_) {
      std::vector<double> coords(dim_);
      for (std::size_t j = 0; j < dim_; ++j) coords[j] = static_cast<double>(idx[j]) * spacing_;
      offsets_.emplace_back(std::move(coords));
    }
    std::size_t j = dim_;
    while (j > 0) {
      --j;
      if (idx[j] < n) {
        ++idx[j];
        break;
      }
      idx[j] = -n;
      if (j == 0) return offsets_;
    }
  }
}

Point BallGrid::sample_offset(RandomStream& rng) const {
  if (steps_ == 0) return Point(std::vector<double>(dim_, 0.0));
  const auto n = static_cast<long long>(steps_);
  const std::size_t width = 2 * steps_ + 1;
  std::vector<double> coords(dim_);
  while (true) {
    double sq = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) {
      const long long v = static_cast<long long>(rng.uniform_index(width)) - n;
      sq += static_cast<double>(v * v);
      coords[j] = static_cast<double>(v) * spacing_;
    }
    if (sq <= keep_sq_) return Point(std::move(coords));
  }
}

Point BallGrid::translate(const Point& center, const Point& offset) {
  std::vector<double> coords(center.dim());
  for (std::size_t j = 0; j < center.dim(); ++j) coords[j] = center[j] + offset[j];
  return Point(std::move(coords));
}

std::vector<Point> euclidean_ball_cover(const Point& center, double r, double r_prime) {
  const BallGrid grid(center.dim(), r, r_prime);
  std::vector<Point> cover;
  cover.reserve(grid.size());
  for (const Point& offset : grid.offsets()) cover.push_back(BallGrid::translate(center, offset));
  return cover;
}

}  // namespace kcmedian
