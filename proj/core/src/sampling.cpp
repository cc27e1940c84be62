#include "kcmedian/sampling.hpp"

#include <cmath>
#include <set>
#include <string>

namespace kcmedian {

namespace {

std::vector<double> element_key(const std::vector<Point>& points) {
  std::vector<double> key;
  key.push_back(static_cast<double>(points.size()));
  for (const Point& p : points) key.insert(key.end(), p.coords().begin(), p.coords().end());
  return key;
}

std::string fmt(double v) { return std::to_string(v); }

}  // namespace

std::size_t SamplingParams::m() const noexcept {
  // The guard keeps 4 / 0.4 from rounding up to 11.
  return 1 + static_cast<std::size_t>(std::ceil(4.0 / epsilon - 1e-9));
}

void SamplingParams::validate(bool needs_delta1) const {
  if (!std::isfinite(epsilon) || !std::isfinite(delta)) throw ParameterError("epsilon and delta must be finite");
  if (allow_loose) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ParameterError("epsilon must lie in (0, 1), got " + fmt(epsilon));
    if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("delta must lie in (0, 1), got " + fmt(delta));
  } else {
    if (!(epsilon > 0.0 && epsilon < 4.0 / 9.0)) {
      throw ParameterError("epsilon must lie in (0, 4/9), got " + fmt(epsilon));
    }
    const double lo = 1.0 - 5.0 * epsilon / 18.0;
    if (!(delta > lo && delta < 1.0)) {
      throw ParameterError("delta must lie in (1 - 5 epsilon / 18, 1) = (" + fmt(lo) + ", 1), got " + fmt(delta));
    }
  }
  if (needs_delta1 && !(delta1() > 0.0)) {
    throw ParameterError("delta1 = epsilon / 2 - 9/5 (1 - delta) must be positive, got " + fmt(delta1()));
  }
  if (!std::isfinite(cover_ratio_cap) || cover_ratio_cap < 0.0 || (cover_ratio_cap > 0.0 && cover_ratio_cap <= 1.0)) {
    throw ParameterError("cover ratio cap must be 0 (off) or greater than 1, got " + fmt(cover_ratio_cap));
  }
}

CoverRadii cover_radii(double a, double b, const SamplingParams& params) {
  if (!(a > 0.0) || !(b >= a)) throw ParameterError("cover radii require 0 < a <= b");
  CoverRadii out;
  out.r = 2.0 * b / params.delta1();
  out.r_prime = params.epsilon * a / 2.0;
  out.requested_ratio = out.r / out.r_prime;
  const double cap = params.cover_ratio_cap;
  if (cap > 0.0 && out.requested_ratio > cap) {
    const double mid = std::sqrt(out.r) * std::sqrt(out.r_prime);
    out.r = mid * std::sqrt(cap);
    out.r_prime = mid / std::sqrt(cap);
    out.capped = true;
  }
  return out;
}

double gamma_cover_ratio(const SamplingParams& params) {
  SamplingParams uncapped = params;
  uncapped.cover_ratio_cap = 0.0;
  const double e1 = params.epsilon1();
  return cover_radii(e1 * e1 * e1 / 2.0, 1.0 / e1, uncapped).requested_ratio;
}

std::vector<std::size_t> uniform_indices(std::size_t population, std::size_t size, RandomStream& rng) {
  if (population == 0) throw InputError("sampling from an empty population");
  std::vector<std::size_t> out(size);
  for (std::size_t& i : out) i = rng.uniform_index(population);
  return out;
}

template <class E>
void dedupe_elements(std::vector<E>& elements) {
  std::set<std::vector<double>> seen;
  std::vector<E> kept;
  kept.reserve(elements.size());
  for (E& e : elements) {
    if (seen.insert(element_key(e.points())).second) kept.push_back(std::move(e));
  }
  elements = std::move(kept);
}

template <class Space>
std::vector<typename Space::Element> candidate_set_from_anchor(const Space& space,
                                                              const typename Space::Element& anchor, double a,
                                                              double b, const SamplingParams& params,
                                                              RandomStream& rng, OperationCounter& counter) {
  using E = typename Space::Element;
  std::vector<E> out{anchor};
  const CoverRadii radii = cover_radii(a, b, params);
  if (!(radii.r_prime < radii.r)) return out;

  auto cover = space.cover(anchor, radii.r, radii.r_prime);
  const std::size_t budget = params.cover_budget;
  if (budget > 0 && cover.count() > static_cast<double>(budget)) {
    for (std::size_t i = 0; i < budget; ++i) {
      out.push_back(space.project(cover.sample(rng)));
      ++counter.projection_evals;
    }
  } else {
    while (auto element = cover.next()) {
      out.push_back(space.project(*element));
      ++counter.projection_evals;
    }
  }
  dedupe_elements(out);
  return out;
}

template <class Space>
std::vector<typename Space::Element> gamma_from_sample(const Space& space,
                                                      std::span<const typename Space::Element* const> Q,
                                                      const typename Space::Element& q,
                                                      const SamplingParams& params, RandomStream& rng,
                                                      OperationCounter& counter) {
  using E = typename Space::Element;
  if (Q.empty()) throw InputError("Gamma needs a nonempty sample");
  E anchor = space.project(q);
  ++counter.projection_evals;
  double W = 0.0;
  for (const E* p : Q) W += space.distance(*p, anchor);
  counter.distance_evals += Q.size();
  if (W == 0.0) return {anchor};

  const double mean = W / static_cast<double>(Q.size());
  const double e1 = params.epsilon1();
  const double a = e1 * e1 * e1 / 2.0 * mean;
  const double b = mean / e1;
  return candidate_set_from_anchor(space, anchor, a, b, params, rng, counter);
}

template <class Space>
std::vector<typename Space::Element> gamma_candidates(const Space& space,
                                                     std::span<const typename Space::Element> view,
                                                     const SamplingParams& params, RandomStream& rng,
                                                     OperationCounter& counter) {
  using E = typename Space::Element;
  if (view.empty()) throw InputError("Gamma needs a nonempty input");
  const std::size_t m = params.m();
  const std::vector<std::size_t> draw = uniform_indices(view.size(), m, rng);
  std::vector<const E*> Q;
  Q.reserve(m - 1);
  for (std::size_t i = 0; i + 1 < m; ++i) Q.push_back(&view[draw[i]]);
  RandomStream cover_rng = rng.split(0);
  return gamma_from_sample(space, std::span<const E* const>(Q), view[draw.back()], params, cover_rng, counter);
}

#define KCMEDIAN_SAMPLING_INSTANTIATE(Space)                                                                  \
  template std::vector<Space::Element> candidate_set_from_anchor<Space>(                                     \
      const Space&, const Space::Element&, double, double, const SamplingParams&, RandomStream&,             \
      OperationCounter&);                                                                                     \
  template std::vector<Space::Element> gamma_from_sample<Space>(                                             \
      const Space&, std::span<const Space::Element* const>, const Space::Element&, const SamplingParams&,    \
      RandomStream&, OperationCounter&);                                                                      \
  template std::vector<Space::Element> gamma_candidates<Space>(                                              \
      const Space&, std::span<const Space::Element>, const SamplingParams&, RandomStream&, OperationCounter&);

KCMEDIAN_SAMPLING_INSTANTIATE(TrajectorySpace)
KCMEDIAN_SAMPLING_INSTANTIATE(PointSetSpace)
KCMEDIAN_SAMPLING_INSTANTIATE(FiniteTrajectorySpace)
KCMEDIAN_SAMPLING_INSTANTIATE(FinitePointSetSpace)

template void dedupe_elements<Trajectory>(std::vector<Trajectory>&);
template void dedupe_elements<PointSet>(std::vector<PointSet>&);

}  // namespace kcmedian
