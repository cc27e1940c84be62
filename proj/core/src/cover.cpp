#include "kcmedian/cover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kcmedian {

namespace {

void check_radii(double r, double r_prime) {
  if (!(r_prime > 0.0) || !std::isfinite(r_prime)) throw ParameterError("cover requires r' > 0");
  if (!(r_prime < r) || !std::isfinite(r)) throw ParameterError("cover requires r' < r");
}

double log_binomial(std::size_t n, std::size_t k) {
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

// Normalizes log-weights so the largest is 1; avoids overflow for large grids.
std::vector<double> relative_weights(const std::vector<double>& logs) {
  const double top = *std::max_element(logs.begin(), logs.end());
  std::vector<double> w;
  w.reserve(logs.size());
  for (double v : logs) w.push_back(std::exp(v - top));
  return w;
}

std::size_t pick_weighted(const std::vector<double>& weights, RandomStream& rng) {
  double total = 0.0;
  for (double w : weights) total += w;
  double u = rng.uniform01() * total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (u < weights[i]) return i;
    u -= weights[i];
  }
  return weights.size() - 1;
}

}  // namespace

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double result = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    result *= static_cast<double>(n - k + i);
    result /= static_cast<double>(i);
  }
  return result;
}

// ---------------------------------------------------------------------------
// TrajectoryCover

TrajectoryCover::TrajectoryCover(Trajectory center, std::size_t l, double r, double r_prime)
    : center_(std::move(center)), l_(l), grid_((check_radii(r, r_prime), center_.dim()), r, r_prime) {
  if (l_ == 0) throw ParameterError("cover requires l >= 1");
  if (center_.size() > l_) throw ParameterError("cover center has more than l vertices");
  const std::size_t lp = center_.size();
  const double g = static_cast<double>(grid_.size());
  std::vector<double> logs;
  for (std::size_t s = lp; s <= 2 * l_; ++s) {
    count_ += binomial(s - 1, lp - 1) * std::pow(g, static_cast<double>(s));
    logs.push_back(log_binomial(s - 1, lp - 1) + static_cast<double>(s) * std::log(g));
  }
  length_weights_ = relative_weights(logs);
  start_length(lp);
}

double TrajectoryCover::size_bound() const {
  const double base = static_cast<double>(center_.size()) * static_cast<double>(grid_.size()) + 1.0;
  return std::pow(base, static_cast<double>(2 * l_));
}

bool TrajectoryCover::start_length(std::size_t s) {
  if (s > 2 * l_) {
    done_ = true;
    return false;
  }
  const std::size_t lp = center_.size();
  length_ = s;
  // blocks_ holds the s - 1 step flags (1 = move to the next vertex) in
  // ascending lexicographic order, so repeats of early vertices come first.
  blocks_.assign(s - 1, 0);
  std::fill(blocks_.end() - static_cast<std::ptrdiff_t>(lp - 1), blocks_.end(), 1);
  digits_.assign(s, 0);
  return true;
}

bool TrajectoryCover::advance_blocks() { return std::next_permutation(blocks_.begin(), blocks_.end()); }

Trajectory TrajectoryCover::current() const {
  const std::vector<Point>& offsets = grid_.offsets();
  std::vector<Point> vertices;
  vertices.reserve(length_);
  std::size_t block = 0;
  for (std::size_t t = 0; t < length_; ++t) {
    if (t > 0) block += blocks_[t - 1];
    vertices.push_back(BallGrid::translate(center_.points()[block], offsets[digits_[t]]));
  }
  return Trajectory(std::move(vertices));
}

std::optional<Trajectory> TrajectoryCover::next() {
  if (done_) return std::nullopt;
  Trajectory out = current();
  const std::size_t g = grid_.size();
  std::size_t t = length_;
  while (t > 0) {
    --t;
    if (++digits_[t] < g) return out;
    digits_[t] = 0;
  }
  if (advance_blocks()) return out;
  start_length(length_ + 1);
  return out;
}

Trajectory TrajectoryCover::sample(RandomStream& rng) const {
  const std::size_t lp = center_.size();
  const std::size_t s = lp + pick_weighted(length_weights_, rng);
  std::vector<std::size_t> steps(s - 1, 0);
  for (std::size_t pos : rng.distinct_indices(s - 1, lp - 1)) steps[pos] = 1;
  std::vector<Point> vertices;
  vertices.reserve(s);
  std::size_t block = 0;
  for (std::size_t t = 0; t < s; ++t) {
    if (t > 0) block += steps[t - 1];
    vertices.push_back(BallGrid::translate(center_.points()[block], grid_.sample_offset(rng)));
  }
  return Trajectory(std::move(vertices));
}

// ---------------------------------------------------------------------------
// PointSetCover

PointSetCover::PointSetCover(PointSet center, std::size_t l, double r, double r_prime)
    : center_(std::move(center)),
      l_(l),
      grid_((check_radii(r, r_prime), center_.dim()), r, r_prime),
      union_size_(center_.size() * grid_.size()) {
  if (l_ == 0) throw ParameterError("cover requires l >= 1");
  if (center_.size() > l_) throw ParameterError("cover center has more than l points");
  const std::size_t top = std::min(l_, union_size_);
  std::vector<double> logs;
  for (std::size_t j = 1; j <= top; ++j) {
    count_ += binomial(union_size_, j);
    logs.push_back(log_binomial(union_size_, j));
  }
  size_weights_ = relative_weights(logs);
  chosen_ = {0};
}

double PointSetCover::size_bound() const {
  double bound = 0.0;
  for (std::size_t j = 1; j <= l_; ++j) bound += binomial(union_size_, j);
  return bound;
}

Point PointSetCover::union_point(std::size_t u) const {
  const std::size_t g = grid_.size();
  return BallGrid::translate(center_.points()[u / g], grid_.offsets()[u % g]);
}

std::optional<PointSet> PointSetCover::next() {
  if (done_) return std::nullopt;
  std::vector<Point> points;
  points.reserve(chosen_.size());
  for (std::size_t u : chosen_) points.push_back(union_point(u));
  PointSet out(std::move(points));

  const std::size_t j = chosen_.size();
  std::size_t i = j;
  while (i > 0) {
    --i;
    if (chosen_[i] < union_size_ - j + i) {
      ++chosen_[i];
      for (std::size_t t = i + 1; t < j; ++t) chosen_[t] = chosen_[t - 1] + 1;
      return out;
    }
  }
  if (j + 1 > std::min(l_, union_size_)) {
    done_ = true;
  } else {
    chosen_.resize(j + 1);
    for (std::size_t t = 0; t <= j; ++t) chosen_[t] = t;
  }
  return out;
}

PointSet PointSetCover::sample(RandomStream& rng) const {
  const std::size_t j = 1 + pick_weighted(size_weights_, rng);
  std::vector<std::size_t> owners;
  std::vector<Point> offsets;
  while (offsets.size() < j) {
    const std::size_t owner = rng.uniform_index(center_.size());
    Point offset = grid_.sample_offset(rng);
    bool repeat = false;
    for (std::size_t t = 0; t < offsets.size(); ++t) {
      if (owners[t] == owner && offsets[t] == offset) repeat = true;
    }
    if (repeat) continue;
    owners.push_back(owner);
    offsets.push_back(std::move(offset));
  }
  std::vector<Point> points;
  points.reserve(j);
  for (std::size_t t = 0; t < j; ++t) {
    points.push_back(BallGrid::translate(center_.points()[owners[t]], offsets[t]));
  }
  return PointSet(std::move(points));
}

}  // namespace kcmedian
