#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "kcmedian/errors.hpp"
#include "kcmedian/geometry.hpp"
#include "kcmedian/metrics.hpp"
#include "kcmedian/random.hpp"

namespace kcmedian {

/// r'-cover of the d_F ball of radius r around a trajectory of l' <= l
/// vertices, restricted to trajectories of at most l vertices.
///
/// Elements are the sequences <v_1..v_s>, l' <= s <= 2l, whose block indices
/// b_1 <= ... <= b_s start at the first vertex, end at the last, step by at
/// most one, and take v_t from the lattice around vertex b_t. Every
/// trajectory of at most l vertices within d_F <= r of the center lies
/// within r'/2 of some element.
///
/// Elements stream by ascending length, then block sequence, then lattice
/// choice. All vertices share one lattice size G, so
///   count() = sum_s C(s - 1, l' - 1) * G^s <= (l' G + 1)^(2l).
class TrajectoryCover {
 public:
  /// Throws ParameterError unless 0 < r' < r and |center| <= l.
  TrajectoryCover(Trajectory center, std::size_t l, double r, double r_prime);

  double count() const noexcept { return count_; }
  std::size_t grid_size() const noexcept { return grid_.size(); }
  double size_bound() const;
  const BallGrid& grid() const noexcept { return grid_; }

  std::optional<Trajectory> next();
  /// One element drawn uniformly from the emitted set.
  Trajectory sample(RandomStream& rng) const;

 private:
  bool start_length(std::size_t s);
  bool advance_blocks();
  Trajectory current() const;

  Trajectory center_;
  std::size_t l_;
  BallGrid grid_;
  double count_ = 0.0;
  std::vector<double> length_weights_;  // relative, per length l'..2l

  std::size_t length_ = 0;
  std::vector<std::size_t> blocks_;
  std::vector<std::size_t> digits_;
  bool done_ = false;
};

/// r'-cover of the d_H ball of radius r around a point set of l' <= l
/// points: every subset of size 1..l of the union of the per-point lattices.
/// Lattice points shared by neighbouring lattices are not merged, so
///   count() = sum_{j=1..l} C(l' G, j).
class PointSetCover {
 public:
  /// Throws ParameterError unless 0 < r' < r and |center| <= l.
  PointSetCover(PointSet center, std::size_t l, double r, double r_prime);

  double count() const noexcept { return count_; }
  std::size_t grid_size() const noexcept { return grid_.size(); }
  std::size_t union_size() const noexcept { return union_size_; }
  double size_bound() const;
  const BallGrid& grid() const noexcept { return grid_; }

  std::optional<PointSet> next();
  PointSet sample(RandomStream& rng) const;

 private:
  Point union_point(std::size_t u) const;

  PointSet center_;
  std::size_t l_;
  BallGrid grid_;
  std::size_t union_size_;
  double count_ = 0.0;
  std::vector<double> size_weights_;

  std::vector<std::size_t> chosen_;
  bool done_ = false;
};

/// Members of a finite center set within distance r of the center. Exact:
/// each member covers itself.
template <class E>
class FiniteCover {
 public:
  FiniteCover(std::vector<E> members, double r, double r_prime) : members_(std::move(members)) {
    if (!(r_prime > 0.0) || !(r_prime < r)) throw ParameterError("cover requires 0 < r' < r");
  }

  double count() const noexcept { return static_cast<double>(members_.size()); }

  std::optional<E> next() {
    if (pos_ == members_.size()) return std::nullopt;
    return members_[pos_++];
  }

  E sample(RandomStream& rng) const { return members_[rng.uniform_index(members_.size())]; }

 private:
  std::vector<E> members_;
  std::size_t pos_ = 0;
};

/// Binomial coefficient as a double; exact while the result fits 53 bits.
double binomial(std::size_t n, std::size_t k);

}  // namespace kcmedian
