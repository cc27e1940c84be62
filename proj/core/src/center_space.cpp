#include "kcmedian/center_space.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>

namespace kcmedian {

namespace {

using Mask = std::vector<std::uint64_t>;

Mask empty_mask(std::size_t bits) { return Mask((bits + 63) / 64, 0); }
void set_bit(Mask& m, std::size_t i) { m[i / 64] |= std::uint64_t{1} << (i % 64); }
bool test_bit(const Mask& m, std::size_t i) { return (m[i / 64] >> (i % 64)) & 1U; }

struct Candidate {
  Ball ball;
  Mask covers;
};

// Depth-first search for at most `budget` candidates (radius index <= limit)
// whose union covers every point. Branches on the first uncovered point.
bool cover_search(const std::vector<Candidate>& cands, const std::vector<std::vector<std::size_t>>& by_point,
                  std::size_t limit, std::size_t n, Mask& covered, std::size_t budget,
                  std::vector<std::size_t>& chosen) {
  std::size_t first = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (!test_bit(covered, i)) {
      first = i;
      break;
    }
  }
  if (first == n) return true;
  if (budget == 0) return false;
  for (std::size_t c : by_point[first]) {
    if (c > limit) break;  // by_point lists are in radius order
    Mask saved = covered;
    for (std::size_t w = 0; w < covered.size(); ++w) covered[w] |= cands[c].covers[w];
    chosen.push_back(c);
    if (cover_search(cands, by_point, limit, n, covered, budget - 1, chosen)) return true;
    chosen.pop_back();
    covered = std::move(saved);
  }
  return false;
}

}  // namespace

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::trajectory_l:
      return "trajectory";
    case SpaceKind::pointset_l:
      return "pointset";
    case SpaceKind::finite:
      return "finite";
  }
  return "unknown";
}

TrajectoryProjection simplify_trajectory(const Trajectory& t, std::size_t l) {
  if (l == 0) throw ParameterError("projection requires l >= 1");
  const std::size_t m = t.size();
  if (m <= l) return {t, 0.0};

  const std::vector<Point>& pts = t.points();
  // radius[i][j]: MEB radius of pts[i..j].
  std::vector<std::vector<double>> radius(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      radius[i][j] = min_enclosing_ball(std::span<const Point>(pts.data() + i, j - i + 1)).radius;
    }
  }

  // best[b][j]: smallest max radius splitting pts[0..j] into b + 1 blocks.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> best(l, std::vector<double>(m, inf));
  std::vector<std::vector<std::size_t>> start(l, std::vector<std::size_t>(m, 0));
  for (std::size_t j = 0; j < m; ++j) best[0][j] = radius[0][j];
  for (std::size_t b = 1; b < l; ++b) {
    for (std::size_t j = b; j < m; ++j) {
      for (std::size_t i = b; i <= j; ++i) {
        const double v = std::max(best[b - 1][i - 1], radius[i][j]);
        if (v < best[b][j]) {
          best[b][j] = v;
          start[b][j] = i;
        }
      }
    }
  }

  std::vector<std::size_t> starts(l);
  std::size_t end = m - 1;
  for (std::size_t b = l; b-- > 0;) {
    starts[b] = (b == 0) ? 0 : start[b][end];
    if (b > 0) end = starts[b] - 1;
  }
  std::vector<Point> centers;
  centers.reserve(l);
  for (std::size_t b = 0; b < l; ++b) {
    const std::size_t lo = starts[b];
    const std::size_t hi = (b + 1 < l) ? starts[b + 1] - 1 : m - 1;
    centers.push_back(min_enclosing_ball(std::span<const Point>(pts.data() + lo, hi - lo + 1)).center);
  }
  Trajectory center(t.id(), std::move(centers));
  const double r = discrete_frechet(t, center);
  return {std::move(center), r};
}

Trajectory project_to_trajectory_centers(const Trajectory& t, std::size_t l) {
  return simplify_trajectory(t, l).center;
}

PointSetProjection solve_l_center(const PointSet& s, std::size_t l) {
  if (l == 0) throw ParameterError("projection requires l >= 1");
  const std::size_t n = s.size();
  if (n <= l) return {s, 0.0};

  const std::vector<Point>& pts = s.points();
  const std::size_t max_support = std::min(n, s.dim() + 1);
  std::vector<Candidate> cands;
  std::vector<std::size_t> subset;
  std::vector<Point> members;
  std::function<void(std::size_t)> grow = [&](std::size_t from) {
    if (!subset.empty()) {
      members.clear();
      for (std::size_t i : subset) members.push_back(pts[i]);
      Ball ball = min_enclosing_ball(members);
      Mask covers = empty_mask(n);
      for (std::size_t i = 0; i < n; ++i) {
        if (ball.contains(pts[i])) set_bit(covers, i);
      }
      cands.push_back({std::move(ball), std::move(covers)});
    }
    if (subset.size() == max_support) return;
    for (std::size_t i = from; i < n; ++i) {
      subset.push_back(i);
      grow(i + 1);
      subset.pop_back();
    }
  };
  grow(0);
  {
    // The MEB of all points always covers; keeps the top of the search feasible.
    Ball all = min_enclosing_ball(pts);
    Mask covers = empty_mask(n);
    for (std::size_t i = 0; i < n; ++i) set_bit(covers, i);
    cands.push_back({std::move(all), std::move(covers)});
  }
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Candidate& a, const Candidate& b) { return a.ball.radius < b.ball.radius; });

  std::vector<std::vector<std::size_t>> by_point(n);
  for (std::size_t c = 0; c < cands.size(); ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      if (test_bit(cands[c].covers, i)) by_point[i].push_back(c);
    }
  }

  // Feasibility is monotone in the radius index; search the first feasible one.
  std::size_t lo = 0;
  std::size_t hi = cands.size() - 1;
  std::vector<std::size_t> chosen;
  auto feasible = [&](std::size_t limit, std::vector<std::size_t>& out) {
    // Every candidate with the same radius as `limit` is also admissible.
    std::size_t last = limit;
    while (last + 1 < cands.size() && cands[last + 1].ball.radius == cands[limit].ball.radius) ++last;
    Mask covered = empty_mask(n);
    out.clear();
    return cover_search(cands, by_point, last, n, covered, l, out);
  };
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (feasible(mid, chosen)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  feasible(lo, chosen);

  std::vector<Point> centers;
  for (std::size_t c : chosen) centers.push_back(cands[c].ball.center);
  PointSet center(s.id(), std::move(centers));
  const double r = hausdorff(s, center);
  return {std::move(center), r};
}

PointSet project_to_pointset_centers(const PointSet& s, std::size_t l) { return solve_l_center(s, l).center; }

TrajectorySpace::TrajectorySpace(std::size_t l) : l_(l) {
  if (l == 0) throw ParameterError("center complexity l must be >= 1");
}

PointSetSpace::PointSetSpace(std::size_t l) : l_(l) {
  if (l == 0) throw ParameterError("center complexity l must be >= 1");
}

}  // namespace kcmedian
