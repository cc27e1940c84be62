#include "kcmedian/engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>
#include <type_traits>
#include <utility>

namespace kcmedian {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class Space>
constexpr bool is_finite_space = std::is_same_v<Space, FiniteTrajectorySpace> || std::is_same_v<Space, FinitePointSetSpace>;

std::vector<double> element_key(const std::vector<Point>& points) {
  std::vector<double> key;
  key.push_back(static_cast<double>(points.size()));
  for (const Point& p : points) key.insert(key.end(), p.coords().begin(), p.coords().end());
  return key;
}

double sum_in_order(const std::vector<double>& values) {
  double total = 0.0;
  for (double v : values) total += v;
  return total;
}

using TraceMap = std::map<std::pair<std::size_t, std::string>, TraceEntry>;

struct Branch {
  OperationCounter counter;
  TraceMap trace;

  void note(std::size_t depth, const char* phase, std::uint64_t candidates = 0) {
    TraceEntry& e = trace[{depth, phase}];
    e.depth = depth;
    e.phase = phase;
    ++e.calls;
    e.candidates += candidates;
  }

  void merge(const Branch& other) {
    counter += other.counter;
    for (const auto& [key, entry] : other.trace) {
      TraceEntry& e = trace[key];
      e.depth = entry.depth;
      e.phase = entry.phase;
      e.calls += entry.calls;
      e.candidates += entry.candidates;
    }
  }
};

template <class F>
void parallel_for(std::size_t count, std::size_t threads, F&& body) {
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

template <class Space>
class Engine {
 public:
  using E = typename Space::Element;

  struct Candidate {
    E element;
    std::ptrdiff_t column = -1;  // index into the explicit centers, strong mode only
  };

  struct Outcome {
    std::vector<E> centers;
    double cost = kInf;
  };

  Engine(const Space& space, std::span<const E> P, const ClusterParams& params, std::span<const E> extra)
      : space_(space), P_(P), params_(params), extra_(extra) {
    m_ = params.subset_size();
    sample_size_ = params.effective_sample_size();
  }

  /// Strong mode: distances from every element to every explicit center.
  void build_table(Branch& br) {
    if constexpr (is_finite_space<Space>) {
      const auto& centers = space_.centers();
      columns_ = centers.size();
      table_.resize(P_.size() * columns_);
      for (std::size_t p = 0; p < P_.size(); ++p) {
        for (std::size_t c = 0; c < columns_; ++c) table_[p * columns_ + c] = space_.distance(P_[p], centers[c]);
      }
      br.counter.distance_evals += P_.size() * columns_;
    }
  }

  Outcome search(std::size_t k_remaining, std::vector<E> centers, const RandomStream& rng, Branch& br) {
    std::vector<double> nearest(P_.size(), kInf);
    for (const E& c : centers) nearest = with_center(nearest, Candidate{c, -1}, br);
    std::vector<std::size_t> view(P_.size());
    std::iota(view.begin(), view.end(), 0);
    return recurse(view, k_remaining, std::move(centers), std::move(nearest), rng, 0, br, true);
  }

 private:
  std::vector<double> with_center(const std::vector<double>& nearest, const Candidate& c, Branch& br) const {
    std::vector<double> out(nearest);
    if (c.column >= 0) {
      const auto col = static_cast<std::size_t>(c.column);
      for (std::size_t p = 0; p < P_.size(); ++p) out[p] = std::min(out[p], table_[p * columns_ + col]);
    } else {
      for (std::size_t p = 0; p < P_.size(); ++p) out[p] = std::min(out[p], space_.distance(P_[p], c.element));
      br.counter.distance_evals += P_.size();
    }
    return out;
  }

  Candidate project_element(std::size_t p, Branch& br) const {
    ++br.counter.projection_evals;
    if constexpr (is_finite_space<Space>) {
      if (strong()) {
        std::size_t best = 0;
        for (std::size_t c = 1; c < columns_; ++c) {
          if (table_[p * columns_ + c] < table_[p * columns_ + best]) best = c;
        }
        return {space_.centers()[best], static_cast<std::ptrdiff_t>(best)};
      }
    }
    return {space_.project(P_[p]), -1};
  }

  bool strong() const noexcept { return params_.mode == Mode::strong; }

  Outcome recurse(const std::vector<std::size_t>& view, std::size_t k_remaining, std::vector<E> centers,
                  std::vector<double> nearest, const RandomStream& rng, std::size_t depth, Branch& br, bool top) {
    if (k_remaining == 0) {
      br.note(depth, "leaf");
      const double cost = sum_in_order(nearest);
      return {std::move(centers), cost};
    }
    if (k_remaining >= view.size()) {
      br.note(depth, "base", view.size());
      for (std::size_t p : view) {
        Candidate c = project_element(p, br);
        nearest = with_center(nearest, c, br);
        centers.push_back(std::move(c.element));
      }
      const double cost = sum_in_order(nearest);
      return {std::move(centers), cost};
    }

    Outcome best;
    if (!centers.empty()) {
      br.note(depth, "prune");
      best = recurse(prune_half(view, nearest), k_remaining, centers, nearest, rng.split(0), depth + 1, br, false);
    }

    std::vector<Candidate> cands = candidates(view, rng, br);
    br.note(depth, "sample", cands.size());

    std::vector<Outcome> outcomes(cands.size());
    std::vector<Branch> branches(cands.size());
    const std::size_t workers = top ? params_.threads : 1;
    parallel_for(cands.size(), workers, [&](std::size_t i) {
      Branch& own = workers > 1 ? branches[i] : br;
      std::vector<E> next_centers(centers);
      next_centers.push_back(cands[i].element);
      std::vector<double> next_nearest = with_center(nearest, cands[i], own);
      outcomes[i] = recurse(view, k_remaining - 1, std::move(next_centers), std::move(next_nearest),
                            rng.split(3 + i), depth + 1, own, false);
    });
    if (workers > 1) {
      for (const Branch& b : branches) br.merge(b);
    }
    for (Outcome& o : outcomes) {
      if (o.cost < best.cost) best = std::move(o);
    }
    return best;
  }

  // Sample subsets of S, each given as element indices into P. In weak mode
  // the last index of a subset plays the extra point q.
  std::vector<std::vector<std::size_t>> subsets(const std::vector<std::size_t>& S, RandomStream& rng) const {
    std::vector<std::vector<std::size_t>> out;
    if (params_.subset_budget > 0) {
      for (std::size_t t = 0; t < params_.subset_budget; ++t) {
        std::vector<std::size_t> pick;
        pick.reserve(m_);
        for (std::size_t pos : rng.distinct_indices(S.size(), m_)) pick.push_back(S[pos]);
        out.push_back(std::move(pick));
      }
      return out;
    }
    // Every distinct sub-multiset: of sizes 1..m in strong mode, of size m
    // with each distinct choice of q in weak mode.
    std::map<std::size_t, std::size_t> mult;
    for (std::size_t s : S) ++mult[s];
    std::vector<std::pair<std::size_t, std::size_t>> types(mult.begin(), mult.end());
    std::vector<std::size_t> current;
    auto emit = [&] {
      if (current.empty()) return;
      if (strong()) {
        out.push_back(current);
        return;
      }
      if (current.size() != m_) return;
      for (std::size_t i = 0; i < current.size(); ++i) {
        if (i > 0 && current[i] == current[i - 1]) continue;
        std::vector<std::size_t> with_q;
        with_q.reserve(m_);
        for (std::size_t j = 0; j < current.size(); ++j) {
          if (j != i) with_q.push_back(current[j]);
        }
        with_q.push_back(current[i]);
        out.push_back(std::move(with_q));
      }
    };
    auto grow = [&](auto&& self, std::size_t type) -> void {
      if (type == types.size() || current.size() == m_) {
        emit();
        return;
      }
      const auto [element, available] = types[type];
      const std::size_t room = std::min(available, m_ - current.size());
      for (std::size_t c = 0; c <= room; ++c) {
        for (std::size_t r = 0; r < c; ++r) current.push_back(element);
        self(self, type + 1);
        current.resize(current.size() - c);
      }
    };
    grow(grow, 0);
    return out;
  }

  std::vector<Candidate> candidates(const std::vector<std::size_t>& view, const RandomStream& rng, Branch& br) const {
    RandomStream draw_rng = rng.split(1);
    std::vector<std::size_t> S;
    S.reserve(sample_size_);
    for (std::size_t i : uniform_indices(view.size(), sample_size_, draw_rng)) S.push_back(view[i]);

    RandomStream gen_rng = rng.split(2);
    const std::vector<std::vector<std::size_t>> picks = subsets(S, gen_rng);

    std::vector<Candidate> out;
    for (std::size_t t = 0; t < picks.size(); ++t) {
      const std::vector<std::size_t>& pick = picks[t];
      if constexpr (is_finite_space<Space>) {
        if (strong()) {
          std::size_t best = 0;
          double best_cost = kInf;
          for (std::size_t c = 0; c < columns_; ++c) {
            double cost = 0.0;
            for (std::size_t p : pick) cost += table_[p * columns_ + c];
            if (cost < best_cost) {
              best_cost = cost;
              best = c;
            }
          }
          out.push_back({space_.centers()[best], static_cast<std::ptrdiff_t>(best)});
          continue;
        }
      }
      std::vector<const E*> Q;
      Q.reserve(pick.size() - 1);
      for (std::size_t i = 0; i + 1 < pick.size(); ++i) Q.push_back(&P_[pick[i]]);
      RandomStream cover_rng = gen_rng.split(t);
      for (E& e : gamma_from_sample(space_, std::span<const E* const>(Q), P_[pick.back()], params_.sampling,
                                    cover_rng, br.counter)) {
        out.push_back({std::move(e), -1});
      }
    }
    for (const E& e : extra_) out.push_back({e, -1});

    std::set<std::vector<double>> seen;
    std::vector<Candidate> unique;
    unique.reserve(out.size());
    for (Candidate& c : out) {
      if (seen.insert(element_key(c.element.points())).second) unique.push_back(std::move(c));
    }
    return unique;
  }

  const Space& space_;
  std::span<const E> P_;
  const ClusterParams& params_;
  std::span<const E> extra_;
  std::size_t m_ = 0;
  std::size_t sample_size_ = 0;
  std::vector<double> table_;
  std::size_t columns_ = 0;
};

template <class E>
void check_input(std::span<const E> P) {
  if (P.empty()) throw InputError("clustering needs at least one element");
  const std::size_t d = P.front().dim();
  for (const E& e : P) {
    if (e.dim() != d) throw InputError("elements mix dimensions");
  }
}

template <class Space>
void check_mode(const Space&, const ClusterParams& params) {
  if (params.mode == Mode::strong && !is_finite_space<Space>) {
    throw ParameterError("strong mode requires a finite explicit center space");
  }
}

}  // namespace

std::vector<std::size_t> prune_half(const std::vector<std::size_t>& view, const std::vector<double>& nearest) {
  std::vector<std::size_t> order(view);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return nearest[a] < nearest[b] || (nearest[a] == nearest[b] && a < b);
  });
  std::vector<std::size_t> kept(order.begin() + static_cast<std::ptrdiff_t>(view.size() / 2), order.end());
  std::sort(kept.begin(), kept.end());
  return kept;
}

std::string to_string(Mode mode) { return mode == Mode::weak ? "weak" : "strong"; }

std::size_t default_repetitions(double delta, std::size_t k) {
  const double raw = std::ceil(std::log(20.0) * std::pow(5.0 / (1.0 - delta), static_cast<double>(k)));
  if (!(raw < 256.0)) return 256;
  return std::max<std::size_t>(1, static_cast<std::size_t>(raw));
}

double ClusterParams::effective_alpha() const {
  if (alpha > 0.0) return alpha;
  const double kk = static_cast<double>(k);
  return sampling.epsilon / (8.0 * kk * kk);
}

std::size_t ClusterParams::effective_repetitions() const {
  return repetitions > 0 ? repetitions : default_repetitions(sampling.delta, k);
}

std::size_t ClusterParams::subset_size() const {
  if (mode == Mode::strong && strong_m > 0) return strong_m;
  return sampling.m();
}

std::size_t ClusterParams::effective_sample_size() const {
  if (sample_size > 0) return sample_size;
  const double raw = 2.0 * static_cast<double>(subset_size()) / effective_alpha();
  return static_cast<std::size_t>(std::ceil(raw - 1e-9));
}

void ClusterParams::validate() const {
  if (k == 0) throw ParameterError("k must be >= 1");
  sampling.validate(mode == Mode::weak);
  if (alpha != 0.0) {
    const double limit = sampling.allow_loose ? 1.0 : 1.0 / (4.0 * static_cast<double>(k));
    if (!(alpha > 0.0 && alpha < limit)) {
      throw ParameterError("alpha must lie in (0, " + std::string(sampling.allow_loose ? "1" : "1/(4k)") +
                           "), got " + std::to_string(alpha));
    }
  }
  if (mode == Mode::weak && strong_m != 0) throw ParameterError("the subset size m is fixed by epsilon in weak mode");
  if (effective_sample_size() < subset_size()) {
    throw ParameterError("sample size " + std::to_string(effective_sample_size()) + " is below the subset size m = " +
                         std::to_string(subset_size()));
  }
  if (threads == 0) throw ParameterError("threads must be >= 1");
}

template <class E>
double evaluate_cost(std::span<const E> P, std::span<const E> centers) {
  if (centers.empty()) throw ParameterError("cost of an empty center set");
  double total = 0.0;
  for (const E& p : P) {
    double best = kInf;
    for (const E& c : centers) best = std::min(best, element_distance(p, c));
    total += best;
  }
  return total;
}

template <class Space>
ClusterOutcome<typename Space::Element> cluster(const Space& space, std::span<const typename Space::Element> P,
                                               std::size_t k_remaining,
                                               std::vector<typename Space::Element> C_bar,
                                               const ClusterParams& params, const RandomStream& rng,
                                               OperationCounter& counter) {
  params.validate();
  check_mode(space, params);
  check_input(P);
  if (k_remaining > params.k) throw ParameterError("k_remaining exceeds k");
  Engine<Space> engine(space, P, params, {});
  Branch br;
  if (params.mode == Mode::strong) engine.build_table(br);
  auto out = engine.search(k_remaining, std::move(C_bar), rng, br);
  counter += br.counter;
  return {std::move(out.centers), out.cost};
}

template <class Space>
ClusteringResult<typename Space::Element> run(const Space& space, std::span<const typename Space::Element> P,
                                             const ClusterParams& params,
                                             std::span<const typename Space::Element> extra_candidates) {
  using E = typename Space::Element;
  params.validate();
  check_mode(space, params);
  check_input(P);
  const auto started = std::chrono::steady_clock::now();

  Engine<Space> engine(space, P, params, extra_candidates);
  Branch total;
  if (params.mode == Mode::strong) engine.build_table(total);

  ClusteringResult<E> result;
  result.repetitions = params.effective_repetitions();
  result.sample_size = params.effective_sample_size();
  result.subset_size = params.subset_size();

  const RandomStream root(params.seed);
  typename Engine<Space>::Outcome best;
  for (std::size_t r = 0; r < result.repetitions; ++r) {
    auto outcome = engine.search(params.k, {}, root.split(r), total);
    if (outcome.cost < best.cost) {
      best = std::move(outcome);
      result.best_repetition = r;
    }
  }

  std::vector<E> centers = std::move(best.centers);
  dedupe_elements(centers);
  const double recomputed = evaluate_cost<E>(P, centers);
  total.counter.distance_evals += P.size() * centers.size();
  if (std::abs(recomputed - best.cost) > 1e-6 * std::max(std::abs(recomputed), std::abs(best.cost)) + 1e-12) {
    throw std::logic_error("engine cost " + std::to_string(best.cost) + " disagrees with recomputed cost " +
                           std::to_string(recomputed));
  }

  // Top up to min(k, n) centers with projections of the farthest elements.
  const std::size_t target = std::min(params.k, P.size());
  while (centers.size() < target) {
    std::vector<std::pair<double, std::size_t>> far;
    for (std::size_t p = 0; p < P.size(); ++p) {
      double d = kInf;
      for (const E& c : centers) d = std::min(d, space.distance(P[p], c));
      far.emplace_back(-d, p);
    }
    total.counter.distance_evals += P.size() * centers.size();
    std::sort(far.begin(), far.end());
    bool added = false;
    for (const auto& [neg_d, p] : far) {
      E c = space.project(P[p]);
      ++total.counter.projection_evals;
      if (std::find(centers.begin(), centers.end(), c) == centers.end()) {
        centers.push_back(std::move(c));
        ++result.padded_centers;
        added = true;
        break;
      }
    }
    if (!added) break;
  }

  result.assignment.resize(P.size());
  result.distances.resize(P.size());
  for (std::size_t p = 0; p < P.size(); ++p) {
    double best_d = kInf;
    for (std::size_t c = 0; c < centers.size(); ++c) {
      const double d = space.distance(P[p], centers[c]);
      if (d < best_d) {
        best_d = d;
        result.assignment[p] = c;
      }
    }
    result.distances[p] = best_d;
    result.total_cost += best_d;
  }
  total.counter.distance_evals += P.size() * centers.size();

  result.centers = std::move(centers);
  result.counters = total.counter;
  result.counters.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  for (const auto& [key, entry] : total.trace) result.trace.push_back(entry);
  return result;
}

#define KCMEDIAN_ENGINE_INSTANTIATE(Space)                                                              \
  template ClusterOutcome<Space::Element> cluster<Space>(                                              \
      const Space&, std::span<const Space::Element>, std::size_t, std::vector<Space::Element>,         \
      const ClusterParams&, const RandomStream&, OperationCounter&);                                   \
  template ClusteringResult<Space::Element> run<Space>(                                                \
      const Space&, std::span<const Space::Element>, const ClusterParams&, std::span<const Space::Element>);

KCMEDIAN_ENGINE_INSTANTIATE(TrajectorySpace)
KCMEDIAN_ENGINE_INSTANTIATE(PointSetSpace)
KCMEDIAN_ENGINE_INSTANTIATE(FiniteTrajectorySpace)
KCMEDIAN_ENGINE_INSTANTIATE(FinitePointSetSpace)

template double evaluate_cost<Trajectory>(std::span<const Trajectory>, std::span<const Trajectory>);
template double evaluate_cost<PointSet>(std::span<const PointSet>, std::span<const PointSet>);

}  // namespace kcmedian
