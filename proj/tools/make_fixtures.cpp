// Writes the planted clustering fixtures used by the CLI tests and the
// acceptance suite, each with a sidecar of oracle costs.
//
//   make_fixtures <output-dir>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <json.hpp>

#include "kcmedian/oracle.hpp"
#include "kcmedian_cli/dataset.hpp"

namespace {

using kcmedian::Point;
using kcmedian::cli::ElementKind;
namespace oracle = kcmedian::oracle;

constexpr double kGridSpacing = 0.01;
constexpr std::size_t kCenterComplexity = 2;

struct Fixture {
  std::string name;
  ElementKind kind;
  std::size_t clusters;
  std::size_t per_cluster;
  std::uint64_t seed;
};

std::vector<std::vector<Point>> spines(std::size_t clusters) {
  const std::vector<std::vector<Point>> all = {
      {{0.0, 0.0}, {1.0, 0.0}},
      {{100.0, 0.0}, {101.0, 0.0}},
      {{0.0, 100.0}, {1.0, 100.0}},
  };
  return {all.begin(), all.begin() + static_cast<std::ptrdiff_t>(clusters)};
}

template <class E>
void write(const std::filesystem::path& dir, const Fixture& f, const oracle::PlantedInstance<E>& inst) {
  std::ofstream data(dir / (f.name + ".ndjson"));
  for (const E& e : inst.elements) data << kcmedian::cli::record_line(e.id(), f.kind, e.points()) << '\n';

  nlohmann::ordered_json side;
  side["name"] = f.name;
  side["kind"] = kcmedian::cli::to_string(f.kind);
  side["k"] = f.clusters;
  side["l"] = kCenterComplexity;
  side["n"] = inst.elements.size();
  side["ground_truth_cost"] = inst.ground_truth_cost;
  double grid_cost = 0.0;
  double slack = 0.0;
  nlohmann::ordered_json per = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < f.clusters; ++c) {
    std::vector<E> members;
    for (std::size_t i = 0; i < inst.elements.size(); ++i) {
      if (inst.labels[i] == c) members.push_back(inst.elements[i]);
    }
    const auto [lo, hi] = oracle::bounding_box(members);
    const auto g = oracle::grid_1median(members, kCenterComplexity, lo, hi, kGridSpacing);
    grid_cost += g.cost;
    slack += g.slack;
    per.push_back({{"grid_cost", g.cost}, {"grid_slack", g.slack}, {"lattice_points", g.lattice_points}});
  }
  side["grid_cost"] = grid_cost;
  side["grid_slack"] = slack;
  side["grid_spacing"] = kGridSpacing;
  side["clusters"] = std::move(per);
  side["generator"] = {{"per_cluster", f.per_cluster},
                       {"points_per_element", inst.spec.points_per_element},
                       {"jitter", inst.spec.jitter},
                       {"seed", f.seed}};
  std::ofstream(dir / (f.name + ".oracle.json")) << side.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <output-dir>\n";
    return 2;
  }
  const std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);
  const Fixture fixtures[] = {
      {"traj2", ElementKind::trajectory, 2, 15, 11},
      {"traj3", ElementKind::trajectory, 3, 20, 12},
      {"pset2", ElementKind::pointset, 2, 15, 13},
      {"pset3", ElementKind::pointset, 3, 20, 14},
  };
  for (const Fixture& f : fixtures) {
    oracle::PlantedSpec spec;
    spec.spines = spines(f.clusters);
    spec.per_cluster = f.per_cluster;
    spec.points_per_element = 6;
    spec.jitter = 0.1;
    spec.seed = f.seed;
    if (f.kind == ElementKind::trajectory) {
      write(dir, f, oracle::planted_trajectories(spec));
    } else {
      write(dir, f, oracle::planted_pointsets(spec));
    }
    std::cout << "wrote " << f.name << '\n';
  }
  return 0;
}
