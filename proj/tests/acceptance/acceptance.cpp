// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "kcmedian/engine.hpp"
#include "kcmedian/oracle.hpp"
#include "kcmedian_cli/commands.hpp"
#include "kcmedian_cli/dataset.hpp"
#include "support.hpp"

namespace {

using namespace kcmedian;
using kcmedian::testing::perturbed_pointset;
using kcmedian::testing::perturbed_trajectory;
using kcmedian::testing::random_pointset;
using kcmedian::testing::random_trajectory;
using kcmedian::testing::unmatched_targets;

// Tolerances and thresholds.
constexpr double kExactTol = 1e-9;
constexpr double kRatioRelTol = 1e-12;
constexpr double kEpsilon = 0.4;
constexpr double kDelta = 0.95;

constexpr double kC1Seconds = 10.0;
constexpr double kC2Seconds = 60.0;
constexpr double kC3Seconds = 120.0;
constexpr double kC4Seconds = 300.0;
constexpr double kC5Seconds = 600.0;

constexpr int kC4Trials = 100;
constexpr int kC4Required = 70;
constexpr std::size_t kC4CoverBudget = 1024;
constexpr double kC4GridSpacing = 0.01;

constexpr int kC5Seeds = 25;
constexpr double kC5Fraction = 0.8;

constexpr int kC6Instances = 100;
constexpr double kC7MaxRatio = 2.5;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

Verdict timed_limit(Verdict v, double seconds, double limit) {
  if (seconds > limit) {
    v.pass = false;
    v.detail += fmt("; over the %.0f s limit", limit);
  }
  return v;
}

// 1. Distances against correspondence enumeration.
Verdict distance_oracles() {
  RandomStream rng(1001);
  int bad_f = 0, bad_h = 0;
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const Trajectory a = random_trajectory(rng, 6);
    const Trajectory b = random_trajectory(rng, 6);
    const double err = std::abs(discrete_frechet(a, b) - oracle::brute_frechet(a, b));
    worst = std::max(worst, err);
    bad_f += err > kExactTol;
  }
  for (int i = 0; i < 500; ++i) {
    const PointSet a = random_pointset(rng, 4);
    const PointSet b = random_pointset(rng, 4);
    const double err = std::abs(hausdorff(a, b) - oracle::brute_hausdorff(a, b));
    worst = std::max(worst, err);
    bad_h += err > kExactTol;
  }
  return {bad_f == 0 && bad_h == 0,
          fmt("frechet mismatches %d/500, hausdorff mismatches %d/500, max error %.2e", bad_f, bad_h, worst)};
}

// 2. Projections against partition / assignment enumeration.
Verdict projection_oracles() {
  RandomStream rng(1002);
  int bad_t = 0, bad_s = 0;
  double worst = 0.0;
  for (int i = 0; i < 300; ++i) {
    const Trajectory t = random_trajectory(rng, 10);
    const std::size_t l = 1 + rng.uniform_index(3);
    const auto proj = simplify_trajectory(t, l);
    const double err = std::max(std::abs(proj.radius - oracle::brute_simplification_radius(t, l)),
                                std::abs(oracle::brute_frechet(t, proj.center) - proj.radius));
    worst = std::max(worst, err);
    bad_t += err > kExactTol || proj.center.size() > l;
  }
  for (int i = 0; i < 300; ++i) {
    const PointSet s = random_pointset(rng, 8);
    const std::size_t l = 1 + rng.uniform_index(2);
    const auto proj = solve_l_center(s, l);
    const double err = std::max(std::abs(proj.radius - oracle::brute_l_center_radius(s, l)),
                                std::abs(oracle::brute_hausdorff(s, proj.center) - proj.radius));
    worst = std::max(worst, err);
    bad_s += err > kExactTol || proj.center.size() > l;
  }
  return {bad_t == 0 && bad_s == 0,
          fmt("simplification mismatches %d/300, l-center mismatches %d/300, max error %.2e", bad_t, bad_s, worst)};
}

// 3. Cover soundness and size.
Verdict cover_soundness() {
  RandomStream rng(1003);
  std::size_t failures = 0, over_bound = 0, targets = 0;
  double largest = 0.0;
  for (int c = 0; c < 50; ++c) {
    const double r = 1.0;
    const double rp = r / (c % 2 == 0 ? 2.0 : 4.0);
    const std::size_t l = 1 + rng.uniform_index(2);

    const Trajectory tc = random_trajectory(rng, l);
    std::vector<Trajectory> tt;
    for (int i = 0; i < 200; ++i) tt.push_back(perturbed_trajectory(rng, tc, l, r));
    TrajectoryCover tcover(tc, l, r, rp);
    over_bound += tcover.count() > tcover.size_bound();
    largest = std::max(largest, tcover.count());
    failures += unmatched_targets(tcover, tt, rp);

    const PointSet sc = random_pointset(rng, l);
    std::vector<PointSet> st;
    for (int i = 0; i < 200; ++i) st.push_back(perturbed_pointset(rng, sc, l, r));
    PointSetCover scover(sc, l, r, rp);
    over_bound += scover.count() > scover.size_bound();
    failures += unmatched_targets(scover, st, rp);
    targets += 400;
  }
  return {failures == 0 && over_bound == 0,
          fmt("%zu of %zu perturbed elements unmatched, %zu covers over their bound, largest cover %.3g", failures,
              targets, over_bound, largest)};
}

// 4. Gamma on single-cluster instances against the grid oracle.
Verdict gamma_quality() {
  SamplingParams params;
  params.epsilon = kEpsilon;
  params.delta = kDelta;
  params.cover_ratio_cap = 64.0;
  params.cover_budget = kC4CoverBudget;
  const TrajectorySpace space(2);
  int hits = 0;
  double worst_ratio = 0.0;
  std::vector<double> ratios;
  for (int t = 0; t < kC4Trials; ++t) {
    oracle::PlantedSpec spec;
    spec.spines = {{{0, 0}, {1, 0}}};
    spec.per_cluster = 20;
    spec.points_per_element = 6;
    spec.jitter = 0.1;
    spec.seed = 4000 + static_cast<std::uint64_t>(t);
    const auto inst = oracle::planted_trajectories(spec);
    const auto [lo, hi] = oracle::bounding_box(inst.elements);
    const auto grid = oracle::grid_1median(inst.elements, 2, lo, hi, kC4GridSpacing);

    RandomStream rng(5000 + static_cast<std::uint64_t>(t));
    OperationCounter counter;
    const auto cands = gamma_candidates<TrajectorySpace>(space, inst.elements, params, rng, counter);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : cands) best = std::min(best, evaluate_cost<Trajectory>(inst.elements, {&c, 1}));
    const double ratio = best / (grid.cost + grid.slack);
    ratios.push_back(ratio);
    worst_ratio = std::max(worst_ratio, ratio);
    hits += ratio <= 1.0 + kEpsilon;
  }
  std::sort(ratios.begin(), ratios.end());
  return {hits >= kC4Required,
          fmt("%d/%d trials within (1+eps)(grid cost + slack), need %d; median ratio %.3f, worst %.3f", hits,
              kC4Trials, kC4Required, ratios[ratios.size() / 2], worst_ratio)};
}

ClusterParams desk_params(std::size_t k, std::uint64_t seed) {
  ClusterParams p;
  p.k = k;
  p.seed = seed;
  p.sampling.epsilon = kEpsilon;
  p.sampling.delta = kDelta;
  p.subset_budget = 2;
  p.sampling.cover_budget = 4;
  p.repetitions = 1;
  return p;
}

// 5. End-to-end cost on the shipped fixtures.
Verdict end_to_end() {
  const std::string dir = KCMEDIAN_FIXTURE_DIR;
  const int needed = static_cast<int>(std::ceil(kC5Fraction * kC5Seeds));
  bool ok = true;
  std::string detail;
  for (const std::string name : {"traj2", "traj3", "pset2", "pset3"}) {
    std::ifstream side(dir + "/" + name + ".oracle.json");
    const auto meta = nlohmann::json::parse(side);
    const auto k = meta["k"].get<std::size_t>();
    const auto l = meta["l"].get<std::size_t>();
    const double truth = meta["ground_truth_cost"].get<double>();
    const kcmedian::cli::Dataset data = kcmedian::cli::load_dataset(dir + "/" + name + ".ndjson");
    int good = 0;
    double worst = 0.0;
    for (int s = 0; s < kC5Seeds; ++s) {
      const ClusterParams params = desk_params(k, 100 + static_cast<std::uint64_t>(s));
      const double cost = data.kind == kcmedian::cli::ElementKind::trajectory
                              ? run<TrajectorySpace>(TrajectorySpace(l), data.trajectories, params).total_cost
                              : run<PointSetSpace>(PointSetSpace(l), data.pointsets, params).total_cost;
      worst = std::max(worst, cost / truth);
      good += cost <= (1.0 + 3.0 * kEpsilon) * truth;
    }
    ok = ok && good >= needed;
    detail += fmt("%s %d/%d (worst ratio %.3f); ", name.c_str(), good, kC5Seeds, worst);
  }
  detail += fmt("need %d/%d each", needed, kC5Seeds);
  return {ok, detail};
}

// 6. Strong mode with explicit centers equals exhaustive search.
Verdict strong_exactness() {
  RandomStream rng(1006);
  int exact = 0;
  double worst = 0.0;
  for (int t = 0; t < kC6Instances; ++t) {
    const std::size_t n = 1 + rng.uniform_index(8);
    const std::size_t centers = 2 + rng.uniform_index(5);
    ClusterParams params;
    params.k = 1 + rng.uniform_index(2);
    params.mode = Mode::strong;
    params.subset_budget = 0;
    params.strong_m = n;
    params.sample_size = 64;
    params.repetitions = 1;
    params.seed = 6000 + static_cast<std::uint64_t>(t);
    double got = 0.0, opt = 0.0;
    if (t % 2 == 0) {
      std::vector<Trajectory> P, C;
      for (std::size_t i = 0; i < n; ++i) P.push_back(random_trajectory(rng, 4));
      for (std::size_t i = 0; i < centers; ++i) C.push_back(random_trajectory(rng, 3));
      got = run<FiniteTrajectorySpace>(FiniteTrajectorySpace(C), P, params).total_cost;
      opt = oracle::exhaustive_k_median(P, C, params.k);
    } else {
      std::vector<PointSet> P, C;
      for (std::size_t i = 0; i < n; ++i) P.push_back(random_pointset(rng, 4));
      for (std::size_t i = 0; i < centers; ++i) C.push_back(random_pointset(rng, 3));
      got = run<FinitePointSetSpace>(FinitePointSetSpace(C), P, params).total_cost;
      opt = oracle::exhaustive_k_median(P, C, params.k);
    }
    worst = std::max(worst, std::abs(got - opt));
    exact += std::abs(got - opt) <= kExactTol;
  }
  return {exact == kC6Instances, fmt("%d/%d instances optimal, max gap %.2e", exact, kC6Instances, worst)};
}

// 7. distance_evals growth when n doubles.
Verdict scaling() {
  const std::vector<std::size_t> sizes{200, 400, 800};
  std::vector<double> medians;
  for (std::size_t n : sizes) {
    oracle::PlantedSpec spec;
    spec.spines = {{{0, 0}, {1, 0}, {2, 1}}, {{100, 0}, {101, 0}, {102, 1}}};
    spec.per_cluster = n / 2;
    spec.points_per_element = 10;
    spec.seed = 7000;
    const auto inst = oracle::planted_trajectories(spec);
    std::vector<double> evals;
    for (std::uint64_t s = 0; s < 5; ++s) {
      const auto result = run<TrajectorySpace>(TrajectorySpace(3), inst.elements, desk_params(2, 70 + s));
      evals.push_back(static_cast<double>(result.counters.distance_evals));
    }
    std::sort(evals.begin(), evals.end());
    medians.push_back(evals[2]);
  }
  const double r1 = medians[1] / medians[0];
  const double r2 = medians[2] / medians[1];
  return {r1 <= kC7MaxRatio && r2 <= kC7MaxRatio,
          fmt("median distance_evals %.0f, %.0f, %.0f; ratios %.3f, %.3f (limit %.1f)", medians[0], medians[1],
              medians[2], r1, r2, kC7MaxRatio)};
}

// 8. Gamma cover ratio identity.
Verdict ratio_identity() {
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    SamplingParams p;
    p.epsilon = 0.02 + 0.42 * static_cast<double>(i) / 20.0;
    const double u = 0.05 + 0.9 * static_cast<double>(i % 7) / 6.0;
    p.delta = 1.0 - u * 5.0 * p.epsilon / 18.0;
    p.validate(true);
    const double expected = 2048.0 / (p.delta1() * std::pow(p.epsilon, 5));
    worst = std::max(worst, std::abs(gamma_cover_ratio(p) - expected) / expected);
  }
  return {worst <= kRatioRelTol, fmt("20 (epsilon, delta) pairs, max relative error %.2e", worst)};
}

// 9. Antipodal family.
Verdict antipodal_witness() {
  const auto fam = oracle::antipodal_family(8, 1.0, 2);
  std::size_t outside = 0, close = 0;
  for (std::size_t i = 0; i < fam.members.size(); ++i) {
    outside += discrete_frechet(fam.members[i], fam.spine) > 1.0;
    for (std::size_t j = i + 1; j < fam.members.size(); ++j) {
      close += discrete_frechet(fam.members[i], fam.members[j]) <= 1.0;
    }
  }
  return {fam.members.size() == 256 && outside == 0 && close == 0,
          fmt("%zu members, %zu outside the spine ball, %zu pairs within r", fam.members.size(), outside, close)};
}

// 10. Byte-identical reports across runs and thread counts.
Verdict determinism() {
  const std::string dir = KCMEDIAN_FIXTURE_DIR;
  int identical = 0, total = 0;
  for (const std::string name : {"traj2", "traj3", "pset2", "pset3"}) {
    std::ifstream side(dir + "/" + name + ".oracle.json");
    const auto meta = nlohmann::json::parse(side);
    kcmedian::cli::ClusterOptions o;
    o.input = dir + "/" + name + ".ndjson";
    o.k = meta["k"].get<std::size_t>();
    o.l = meta["l"].get<std::size_t>();
    o.seed = 42;
    o.subset_budget = "2";
    o.cover_budget = 4;
    o.repetitions = 2;
    std::vector<std::string> reports;
    for (std::size_t threads : {1, 1, 4}) {
      o.threads = threads;
      std::ostringstream out, err;
      if (kcmedian::cli::cmd_cluster(o, out, err) != kcmedian::cli::kExitOk) return {false, name + ": " + err.str()};
      reports.push_back(out.str());
    }
    total += 2;
    identical += (reports[0] == reports[1]) + (reports[0] == reports[2]);
  }
  return {identical == total, fmt("%d/%d report pairs byte-identical (repeat and 1 vs 4 threads)", identical, total)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Verdict()> check;
    double limit;  // seconds; 0: none
  };
  const std::vector<Criterion> criteria{
      {1, "distance oracle equivalence", distance_oracles, kC1Seconds},
      {2, "projection exactness", projection_oracles, kC2Seconds},
      {3, "cover soundness", cover_soundness, kC3Seconds},
      {4, "candidate generator quality", gamma_quality, kC4Seconds},
      {5, "end-to-end approximation", end_to_end, kC5Seconds},
      {6, "strong-mode exactness", strong_exactness, 0.0},
      {7, "near-linear scaling", scaling, 0.0},
      {8, "cover ratio identity", ratio_identity, 0.0},
      {9, "antipodal family witness", antipodal_witness, 0.0},
      {10, "determinism", determinism, 0.0},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit > 0.0) v = timed_limit(v, seconds, c.limit);
    std::printf("[%s] %d %s: %s (%.2f s)\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(), seconds);
    std::fflush(stdout);
    failed += !v.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
