#include "kcmedian/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

#include "kcmedian/engine.hpp"
#include "kcmedian/random.hpp"

namespace kcmedian::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double dist(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Full-table discrete Frechet on unsquared distances.
double table_frechet(const std::vector<Point>& a, const std::vector<Point>& b) {
  std::vector<std::vector<double>> t(a.size(), std::vector<double>(b.size(), kInf));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      double prev = kInf;
      if (i == 0 && j == 0) prev = 0.0;
      if (i > 0) prev = std::min(prev, t[i - 1][j]);
      if (j > 0) prev = std::min(prev, t[i][j - 1]);
      if (i > 0 && j > 0) prev = std::min(prev, t[i - 1][j - 1]);
      t[i][j] = std::max(prev, dist(a[i], b[j]));
    }
  }
  return t.back().back();
}

double plain_hausdorff(const std::vector<Point>& a, const std::vector<Point>& b) {
  auto directed = [](const std::vector<Point>& x, const std::vector<Point>& y) {
    double worst = 0.0;
    for (const Point& p : x) {
      double best = kInf;
      for (const Point& q : y) best = std::min(best, dist(p, q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

double oracle_distance(const Trajectory& a, const Trajectory& b) { return table_frechet(a.points(), b.points()); }
double oracle_distance(const PointSet& a, const PointSet& b) { return plain_hausdorff(a.points(), b.points()); }

// Solves A x = y by Gaussian elimination with partial pivoting; false when
// A is (numerically) singular.
bool solve(std::vector<std::vector<double>> A, std::vector<double> y, std::vector<double>& x) {
  const std::size_t n = y.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    }
    if (std::abs(A[piv][col]) < 1e-12) return false;
    std::swap(A[piv], A[col]);
    std::swap(y[piv], y[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = A[r][col] / A[col][col];
      for (std::size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
      y[r] -= f * y[col];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t r = n; r-- > 0;) {
    double s = y[r];
    for (std::size_t c = r + 1; c < n; ++c) s -= A[r][c] * x[c];
    x[r] = s / A[r][r];
  }
  return true;
}

// Center of the smallest sphere through the given points (in their affine hull).
bool circumcenter(const std::vector<Point>& pts, Point& center) {
  const std::size_t d = pts.front().dim();
  const std::size_t k = pts.size() - 1;
  std::vector<std::vector<double>> v(k, std::vector<double>(d));
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < d; ++i) v[j][i] = pts[j + 1][i] - pts[0][i];
  }
  std::vector<std::vector<double>> gram(k, std::vector<double>(k));
  std::vector<double> rhs(k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < d; ++i) s += v[a][i] * v[b][i];
      gram[a][b] = 2.0 * s;
    }
    rhs[a] = gram[a][a] / 2.0;
  }
  std::vector<double> lambda;
  if (k > 0 && !solve(gram, rhs, lambda)) return false;
  std::vector<double> c(pts[0].coords().begin(), pts[0].coords().end());
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < d; ++i) c[i] += lambda[j] * v[j][i];
  }
  center = Point(std::move(c));
  return true;
}

template <class E>
std::vector<Point> lattice(const Point& lo, const Point& hi, double spacing) {
  const std::size_t d = lo.dim();
  std::vector<std::vector<double>> axes(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double span = hi[i] - lo[i];
    auto count = static_cast<std::size_t>(std::floor(span / spacing + 1e-9)) + 1;
    if (lo[i] + static_cast<double>(count - 1) * spacing < hi[i] - 1e-12) ++count;
    for (std::size_t j = 0; j < count; ++j) axes[i].push_back(lo[i] + static_cast<double>(j) * spacing);
  }
  std::vector<Point> out;
  std::vector<std::size_t> idx(d, 0);
  while (true) {
    std::vector<double> c(d);
    for (std::size_t i = 0; i < d; ++i) c[i] = axes[i][idx[i]];
    out.emplace_back(std::move(c));
    std::size_t i = d;
    while (i > 0) {
      --i;
      if (++idx[i] < axes[i].size()) break;
      idx[i] = 0;
      if (i == 0) return out;
    }
  }
}

template <class E>
GridMedian<E> grid_search(const std::vector<E>& P, std::size_t l, const Point& lo, const Point& hi, double spacing,
                          bool ordered) {
  if (P.empty()) throw std::invalid_argument("grid_1median: empty input");
  if (!(spacing > 0.0)) throw std::invalid_argument("grid_1median: spacing must be positive");
  const std::vector<Point> grid = lattice<E>(lo, hi, spacing);
  const std::size_t n = P.size();

  // near[w][p]: distance from lattice point w to the closest point of P[p].
  // Every center vertex is matched to some point of each element, so the
  // largest of these over the center's vertices bounds d(P[p], center).
  std::vector<std::vector<double>> near(grid.size(), std::vector<double>(n));
  std::vector<double> bound(grid.size(), 0.0);
  for (std::size_t w = 0; w < grid.size(); ++w) {
    for (std::size_t p = 0; p < n; ++p) {
      double best = kInf;
      for (const Point& x : P[p].points()) best = std::min(best, dist(grid[w], x));
      near[w][p] = best;
      bound[w] += best;
    }
  }
  std::vector<std::size_t> order(grid.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return bound[a] < bound[b]; });

  auto make = [&](const std::vector<std::size_t>& tuple) {
    std::vector<Point> pts;
    for (std::size_t w : tuple) pts.push_back(grid[w]);
    return E(std::move(pts));
  };
  auto cost_below = [&](const E& c, double limit) {
    double total = 0.0;
    for (const E& p : P) {
      total += oracle_distance(p, c);
      if (total >= limit) return kInf;
    }
    return total;
  };

  GridMedian<E> out;
  out.cost = kInf;
  out.lattice_points = grid.size();

  // Upper bound from snapped block means of each element.
  for (const E& e : P) {
    const auto& pts = e.points();
    const std::size_t blocks = std::min(l, pts.size());
    std::vector<std::size_t> tuple;
    for (std::size_t b = 0; b < blocks; ++b) {
      const std::size_t from = b * pts.size() / blocks;
      const std::size_t to = (b + 1) * pts.size() / blocks;
      std::vector<double> mean(lo.dim(), 0.0);
      for (std::size_t i = from; i < to; ++i) {
        for (std::size_t j = 0; j < lo.dim(); ++j) mean[j] += pts[i][j] / static_cast<double>(to - from);
      }
      std::size_t best_w = 0;
      double best_d = kInf;
      const Point m(mean);
      for (std::size_t w = 0; w < grid.size(); ++w) {
        const double dw = dist(grid[w], m);
        if (dw < best_d) {
          best_d = dw;
          best_w = w;
        }
      }
      tuple.push_back(best_w);
    }
    E c = make(tuple);
    const double cost = cost_below(c, out.cost);
    if (cost < out.cost) {
      out.cost = cost;
      out.center = std::move(c);
    }
  }

  std::vector<std::size_t> tuple;
  std::vector<double> reach(n, 0.0);  // per element, max of near[] over the tuple
  std::function<void(std::size_t)> extend = [&](std::size_t from) {
    if (!tuple.empty()) {
      double lb = 0.0;
      for (double v : reach) lb += v;
      if (lb < out.cost) {
        E c = make(tuple);
        const double cost = cost_below(c, out.cost);
        if (cost < out.cost) {
          out.cost = cost;
          out.center = std::move(c);
        }
      }
    }
    if (tuple.size() == l) return;
    for (std::size_t r = ordered ? 0 : from; r < order.size(); ++r) {
      const std::size_t w = order[r];
      if (bound[w] >= out.cost) break;
      if (ordered && !tuple.empty() && tuple.back() == w) continue;
      std::vector<double> saved = reach;
      double lb = 0.0;
      for (std::size_t p = 0; p < n; ++p) {
        reach[p] = std::max(reach[p], near[w][p]);
        lb += reach[p];
      }
      if (lb < out.cost) {
        tuple.push_back(w);
        extend(r + 1);
        tuple.pop_back();
      }
      reach = std::move(saved);
    }
  };
  extend(0);

  out.slack = static_cast<double>(n) * spacing * std::sqrt(static_cast<double>(lo.dim())) / 2.0;
  return out;
}

template <class E>
PlantedInstance<E> planted(const PlantedSpec& spec) {
  if (spec.spines.empty()) throw std::invalid_argument("planted instance needs a spine");
  PlantedInstance<E> out;
  out.spec = spec;
  RandomStream rng(spec.seed);
  for (std::size_t c = 0; c < spec.spines.size(); ++c) {
    const auto& spine = spec.spines[c];
    if (spec.points_per_element < spine.size()) throw std::invalid_argument("fewer points than spine vertices");
    const std::size_t d = spine.front().dim();
    out.ground_truth_centers.push_back(E(spine));
    for (std::size_t e = 0; e < spec.per_cluster; ++e) {
      std::vector<Point> pts;
      for (std::size_t i = 0; i < spec.points_per_element; ++i) {
        const std::size_t v = i * spine.size() / spec.points_per_element;
        std::vector<double> offset(d);
        double norm_sq;
        do {
          norm_sq = 0.0;
          for (double& o : offset) {
            o = (2.0 * rng.uniform01() - 1.0) * spec.jitter;
            norm_sq += o * o;
          }
        } while (norm_sq > spec.jitter * spec.jitter);
        std::vector<double> x(d);
        for (std::size_t j = 0; j < d; ++j) x[j] = spine[v][j] + offset[j];
        pts.emplace_back(std::move(x));
      }
      out.elements.emplace_back("c" + std::to_string(c) + "_" + std::to_string(e), std::move(pts));
      out.labels.push_back(c);
    }
  }
  out.ground_truth_cost = kcmedian::evaluate_cost<E>(out.elements, out.ground_truth_centers);
  return out;
}

}  // namespace

double brute_frechet(const Trajectory& a, const Trajectory& b) {
  const auto& A = a.points();
  const auto& B = b.points();
  if (A.front().dim() != B.front().dim()) throw std::invalid_argument("brute_frechet: dimension mismatch");
  double best = kInf;
  // Walks every path of (1,0), (0,1), (1,1) steps from (0,0) to the end.
  std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t i, std::size_t j, double worst) {
    worst = std::max(worst, dist(A[i], B[j]));
    if (i + 1 == A.size() && j + 1 == B.size()) {
      best = std::min(best, worst);
      return;
    }
    if (i + 1 < A.size()) walk(i + 1, j, worst);
    if (j + 1 < B.size()) walk(i, j + 1, worst);
    if (i + 1 < A.size() && j + 1 < B.size()) walk(i + 1, j + 1, worst);
  };
  walk(0, 0, 0.0);
  return best;
}

double brute_hausdorff(const PointSet& a, const PointSet& b) {
  const auto& A = a.points();
  const auto& B = b.points();
  const std::size_t pairs = A.size() * B.size();
  if (pairs > 20) throw std::invalid_argument("brute_hausdorff: instance too large");
  std::vector<double> d(pairs);
  for (std::size_t i = 0; i < A.size(); ++i) {
    for (std::size_t j = 0; j < B.size(); ++j) d[i * B.size() + j] = dist(A[i], B[j]);
  }
  const std::uint32_t full_a = (1U << A.size()) - 1;
  const std::uint32_t full_b = (1U << B.size()) - 1;
  double best = kInf;
  for (std::uint32_t mask = 1; mask < (1U << pairs); ++mask) {
    std::uint32_t seen_a = 0;
    std::uint32_t seen_b = 0;
    double worst = 0.0;
    for (std::size_t t = 0; t < pairs; ++t) {
      if (mask & (1U << t)) {
        seen_a |= 1U << (t / B.size());
        seen_b |= 1U << (t % B.size());
        worst = std::max(worst, d[t]);
      }
    }
    if (seen_a == full_a && seen_b == full_b) best = std::min(best, worst);
  }
  return best;
}

Ball brute_min_enclosing_ball(const std::vector<Point>& points) {
  if (points.empty()) throw std::invalid_argument("brute MEB of nothing");
  const std::size_t d = points.front().dim();
  const std::size_t top = std::min(points.size(), d + 1);
  Ball best{points.front(), kInf};
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> choose = [&](std::size_t from) {
    if (!pick.empty()) {
      std::vector<Point> sub;
      for (std::size_t i : pick) sub.push_back(points[i]);
      Point c;
      if (circumcenter(sub, c)) {
        double r = 0.0;
        for (const Point& p : sub) r = std::max(r, dist(c, p));
        bool holds = true;
        for (const Point& p : points) {
          if (dist(c, p) > r + 1e-9) {
            holds = false;
            break;
          }
        }
        if (holds && r < best.radius) best = Ball{c, r};
      }
    }
    if (pick.size() == top) return;
    for (std::size_t i = from; i < points.size(); ++i) {
      pick.push_back(i);
      choose(i + 1);
      pick.pop_back();
    }
  };
  choose(0);
  return best;
}

double brute_simplification_radius(const Trajectory& t, std::size_t l) {
  const auto& pts = t.points();
  const std::size_t m = pts.size();
  double best = kInf;
  // Bit i of `cuts` set: a block ends after point i.
  for (std::uint32_t cuts = 0; cuts < (1U << (m - 1)); ++cuts) {
    if (static_cast<std::size_t>(__builtin_popcount(cuts)) + 1 > l) continue;
    double worst = 0.0;
    std::size_t from = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (i + 1 == m || (cuts & (1U << i))) {
        std::vector<Point> block(pts.begin() + static_cast<std::ptrdiff_t>(from),
                                 pts.begin() + static_cast<std::ptrdiff_t>(i + 1));
        worst = std::max(worst, brute_min_enclosing_ball(block).radius);
        from = i + 1;
      }
    }
    best = std::min(best, worst);
  }
  return best;
}

double brute_l_center_radius(const PointSet& s, std::size_t l) {
  const auto& pts = s.points();
  const std::size_t n = pts.size();
  std::map<std::uint32_t, double> radius;
  auto group_radius = [&](std::uint32_t mask) {
    auto it = radius.find(mask);
    if (it != radius.end()) return it->second;
    std::vector<Point> g;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1U << i)) g.push_back(pts[i]);
    }
    const double r = brute_min_enclosing_ball(g).radius;
    radius.emplace(mask, r);
    return r;
  };
  double best = kInf;
  std::vector<std::size_t> label(n, 0);
  while (true) {
    std::vector<std::uint32_t> groups(l, 0);
    for (std::size_t i = 0; i < n; ++i) groups[label[i]] |= 1U << i;
    double worst = 0.0;
    for (std::uint32_t g : groups) {
      if (g != 0) worst = std::max(worst, group_radius(g));
    }
    best = std::min(best, worst);
    std::size_t i = 0;
    while (i < n && ++label[i] == l) label[i++] = 0;
    if (i == n) break;
  }
  return best;
}

GridMedian<Trajectory> grid_1median(const std::vector<Trajectory>& P, std::size_t l, const Point& lo,
                                    const Point& hi, double spacing) {
  return grid_search(P, l, lo, hi, spacing, true);
}

GridMedian<PointSet> grid_1median(const std::vector<PointSet>& P, std::size_t l, const Point& lo, const Point& hi,
                                  double spacing) {
  return grid_search(P, l, lo, hi, spacing, false);
}

template <class E>
std::pair<Point, Point> bounding_box(const std::vector<E>& elements) {
  Point lo = elements.front().points().front();
  Point hi = lo;
  for (const E& e : elements) {
    for (const Point& p : e.points()) {
      for (std::size_t i = 0; i < p.dim(); ++i) {
        lo[i] = std::min(lo[i], p[i]);
        hi[i] = std::max(hi[i], p[i]);
      }
    }
  }
  return {lo, hi};
}

AntipodalFamily antipodal_family(std::size_t m, double r, std::size_t d) {
  if (m == 0 || m > 20 || d == 0) throw std::invalid_argument("antipodal_family: need 1 <= m <= 20, d >= 1");
  std::vector<Point> spine;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> c(d, 0.0);
    c[0] = 3.0 * r * static_cast<double>(i);
    spine.emplace_back(std::move(c));
  }
  AntipodalFamily out{Trajectory("spine", spine), {}};
  for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
    std::vector<Point> pts = spine;
    for (std::size_t i = 0; i < m; ++i) pts[i][0] += ((mask >> i) & 1U) ? 0.99 * r : -0.99 * r;
    out.members.emplace_back("a" + std::to_string(mask), std::move(pts));
  }
  return out;
}

PlantedInstance<Trajectory> planted_trajectories(const PlantedSpec& spec) { return planted<Trajectory>(spec); }
PlantedInstance<PointSet> planted_pointsets(const PlantedSpec& spec) { return planted<PointSet>(spec); }

template <class E>
double exhaustive_k_median(const std::vector<E>& P, const std::vector<E>& centers, std::size_t k) {
  const std::size_t size = std::min(k, centers.size());
  std::vector<std::vector<double>> d(P.size(), std::vector<double>(centers.size()));
  for (std::size_t p = 0; p < P.size(); ++p) {
    for (std::size_t c = 0; c < centers.size(); ++c) d[p][c] = oracle_distance(P[p], centers[c]);
  }
  double best = kInf;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> choose = [&](std::size_t from) {
    if (pick.size() == size) {
      double total = 0.0;
      for (std::size_t p = 0; p < P.size(); ++p) {
        double m = kInf;
        for (std::size_t c : pick) m = std::min(m, d[p][c]);
        total += m;
      }
      best = std::min(best, total);
      return;
    }
    for (std::size_t c = from; c < centers.size(); ++c) {
      pick.push_back(c);
      choose(c + 1);
      pick.pop_back();
    }
  };
  choose(0);
  return best;
}

template std::pair<Point, Point> bounding_box<Trajectory>(const std::vector<Trajectory>&);
template std::pair<Point, Point> bounding_box<PointSet>(const std::vector<PointSet>&);
template double exhaustive_k_median<Trajectory>(const std::vector<Trajectory>&, const std::vector<Trajectory>&,
                                                std::size_t);
template double exhaustive_k_median<PointSet>(const std::vector<PointSet>&, const std::vector<PointSet>&,
                                              std::size_t);

}  // namespace kcmedian::oracle
