#include "kcmedian_cli/commands.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kcmedian/engine.hpp"
#include "kcmedian/errors.hpp"
#include "kcmedian_cli/dataset.hpp"

namespace kcmedian::cli {

namespace {

using nlohmann::ordered_json;

std::size_t parse_subset_budget(const std::string& text) {
  if (text == "exhaustive") return 0;
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || v == 0 || text.front() == '-') {
    throw ParameterError("--subset-budget must be a positive integer or \"exhaustive\", got \"" + text + "\"");
  }
  return static_cast<std::size_t>(v);
}

ClusterParams make_params(const ClusterOptions& o) {
  ClusterParams p;
  p.k = o.k;
  p.alpha = o.alpha;
  p.sampling.epsilon = o.epsilon;
  p.sampling.delta = o.delta;
  p.sampling.allow_loose = o.allow_loose_params;
  p.sampling.cover_ratio_cap = o.cover_ratio_cap;
  p.sampling.cover_budget = o.cover_budget;
  if (o.mode == "weak") {
    p.mode = Mode::weak;
  } else if (o.mode == "strong") {
    p.mode = Mode::strong;
  } else {
    throw ParameterError("--mode must be weak or strong, got \"" + o.mode + "\"");
  }
  p.subset_budget = parse_subset_budget(o.subset_budget);
  p.repetitions = o.repetitions;
  p.sample_size = o.sample_size;
  p.strong_m = o.strong_m;
  p.seed = o.seed;
  p.threads = o.threads;
  p.validate();
  return p;
}

ordered_json points_json(const std::vector<Point>& points) {
  ordered_json out = ordered_json::array();
  for (const Point& p : points) out.push_back(std::vector<double>(p.coords().begin(), p.coords().end()));
  return out;
}

template <class Space>
struct Outcome {
  ClusteringResult<typename Space::Element> result;
  CenterSpaceDescriptor space;
};

template <class Space>
ordered_json report(const Space& space, const std::vector<typename Space::Element>& P, const ClusterParams& params,
                    const ClusterOptions& o, ElementKind kind, const ClusteringResult<typename Space::Element>& r) {
  const CenterSpaceDescriptor desc = space.descriptor();
  ordered_json doc;
  ordered_json& echo = doc["params"];
  echo["k"] = params.k;
  echo["l"] = desc.kind == SpaceKind::finite ? ordered_json(nullptr) : ordered_json(desc.l);
  echo["epsilon"] = params.sampling.epsilon;
  echo["delta"] = params.sampling.delta;
  echo["mode"] = to_string(params.mode);
  echo["alpha"] = params.effective_alpha();
  echo["subset_budget"] = params.subset_budget == 0 ? ordered_json("exhaustive") : ordered_json(params.subset_budget);
  echo["repetitions"] = r.repetitions;
  echo["sample_size"] = r.sample_size;
  echo["subset_size"] = r.subset_size;
  echo["cover_ratio_cap"] = params.sampling.cover_ratio_cap;
  echo["cover_budget"] = params.sampling.cover_budget;
  echo["allow_loose_params"] = params.sampling.allow_loose;
  echo["center_space"] = to_string(desc.kind);
  if (desc.kind == SpaceKind::finite) echo["explicit_centers"] = desc.explicit_count;

  ordered_json& flags = doc["mode_flags"];
  const bool faithful = !params.sampling.allow_loose && params.sampling.cover_ratio_cap == 0.0 &&
                        params.sampling.cover_budget == 0 && params.subset_budget == 0;
  flags["full_construction"] = faithful;
  flags["loose_params"] = params.sampling.allow_loose;
  flags["cover_ratio_capped"] = params.sampling.cover_ratio_cap > 0.0;
  flags["cover_subsampled"] = params.sampling.cover_budget > 0;
  flags["subsets_sampled"] = params.subset_budget > 0;
  flags["gamma_radius_normalization"] = "per-point mean";
  if (params.mode == Mode::weak) flags["gamma_cover_ratio"] = gamma_cover_ratio(params.sampling);

  doc["seed"] = params.seed;

  ordered_json centers = ordered_json::array();
  for (std::size_t c = 0; c < r.centers.size(); ++c) {
    ordered_json rec;
    rec["id"] = "center_" + std::to_string(c);
    rec["kind"] = to_string(kind);
    rec["points"] = points_json(r.centers[c].points());
    centers.push_back(std::move(rec));
  }
  doc["centers"] = std::move(centers);

  ordered_json assignment = ordered_json::array();
  for (std::size_t p = 0; p < P.size(); ++p) {
    ordered_json a;
    a["id"] = P[p].id();
    a["center_index"] = r.assignment[p];
    a["distance"] = r.distances[p];
    assignment.push_back(std::move(a));
  }
  doc["assignment"] = std::move(assignment);
  doc["total_cost"] = r.total_cost;

  ordered_json& counters = doc["counters"];
  counters["distance_evals"] = r.counters.distance_evals;
  counters["projection_evals"] = r.counters.projection_evals;
  if (o.timing) counters["wall_ms"] = r.counters.wall_ms;

  ordered_json trace = ordered_json::array();
  for (const TraceEntry& t : r.trace) {
    trace.push_back({{"depth", t.depth}, {"phase", t.phase}, {"calls", t.calls}, {"candidates", t.candidates}});
  }
  doc["trace"] = std::move(trace);
  return doc;
}

struct RunSummary {
  ordered_json doc;
  std::vector<std::vector<Point>> centers;
  std::uint64_t distance_evals = 0;
  double wall_ms = 0.0;
};

template <class Space>
RunSummary run_space(const Space& space, const std::vector<typename Space::Element>& P, const ClusterParams& params,
                     const ClusterOptions& o, ElementKind kind) {
  using E = typename Space::Element;
  const auto result = run(space, std::span<const E>(P), params);
  RunSummary s;
  s.doc = report(space, P, params, o, kind, result);
  for (const E& c : result.centers) s.centers.push_back(c.points());
  s.distance_evals = result.counters.distance_evals;
  s.wall_ms = result.counters.wall_ms;
  return s;
}

RunSummary dispatch(const Dataset& data, const ClusterOptions& o, const ClusterParams& params,
                    const std::optional<Dataset>& explicit_centers) {
  if (explicit_centers) {
    if (explicit_centers->kind != data.kind) throw InputError("--centers file holds a different element kind");
    if (explicit_centers->dim != data.dim) throw InputError("--centers file has a different dimension");
    if (data.kind == ElementKind::trajectory) {
      return run_space(FiniteTrajectorySpace(explicit_centers->trajectories), data.trajectories, params, o, data.kind);
    }
    return run_space(FinitePointSetSpace(explicit_centers->pointsets), data.pointsets, params, o, data.kind);
  }
  if (o.l == 0) throw ParameterError("--l (center complexity, >= 1) is required without --centers");
  if (data.kind == ElementKind::trajectory) {
    return run_space(TrajectorySpace(o.l), data.trajectories, params, o, data.kind);
  }
  return run_space(PointSetSpace(o.l), data.pointsets, params, o, data.kind);
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << '\n';
    return kExitParameter;
  }
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

void add_cluster_flags(CLI::App& app, ClusterOptions& o) {
  app.add_option("input", o.input, "Dataset file (one JSON record per line)")->required();
  app.add_option("--k", o.k, "Number of centers")->capture_default_str();
  app.add_option("--l", o.l, "Center complexity: max vertices / points per center");
  app.add_option("--epsilon", o.epsilon, "Approximation parameter")->capture_default_str();
  app.add_option("--delta", o.delta, "Sampling parameter")->capture_default_str();
  app.add_option("--mode", o.mode, "weak (candidate generator) or strong (finite center space)")
      ->capture_default_str();
  app.add_option("--seed", o.seed, "Random seed")->capture_default_str();
  app.add_option("--subset-budget", o.subset_budget, "Sample subsets per sampling phase, or \"exhaustive\"")
      ->capture_default_str();
  app.add_option("--repetitions", o.repetitions, "Independent repetitions (0: default formula)");
  app.add_option("--cover-ratio-cap", o.cover_ratio_cap, "Largest cover radius ratio (0: uncapped)")
      ->capture_default_str();
  app.add_option("--cover-budget", o.cover_budget, "Cover elements drawn per anchor (0: enumerate all)")
      ->capture_default_str();
  app.add_flag("--allow-loose-params", o.allow_loose_params, "Accept epsilon, delta in (0, 1)");
  app.add_option("--centers", o.centers, "Explicit finite center space (dataset file)");
  app.add_option("--threads", o.threads, "Workers for the top-level sampling phase")->capture_default_str();
  app.add_option("--sample-size", o.sample_size, "Sample size |S| (0: ceil(2 m / alpha))");
  app.add_option("--strong-m", o.strong_m, "Subset size in strong mode (0: 1 + ceil(4 / epsilon))");
  app.add_option("--alpha", o.alpha, "Superset sampling fraction (0: epsilon / (8 k^2))");
}

}  // namespace

int cmd_cluster(const ClusterOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ClusterParams params = make_params(o);
    const Dataset data = load_dataset(o.input);
    std::optional<Dataset> centers;
    if (!o.centers.empty()) centers = load_dataset(o.centers);
    if (params.mode == Mode::strong && !centers) {
      throw ParameterError("--mode strong requires an explicit center space (--centers)");
    }
    const RunSummary s = dispatch(data, o, params, centers);
    write_text(o.output, s.doc.dump(2) + "\n", out);
    if (!o.centers_out.empty()) {
      std::string lines;
      for (std::size_t c = 0; c < s.centers.size(); ++c) {
        lines += record_line("center_" + std::to_string(c), data.kind, s.centers[c]) + "\n";
      }
      write_text(o.centers_out, lines, out);
    }
    return kExitOk;
  });
}

int cmd_bench(const BenchOptions& b, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (b.seeds == 0) throw ParameterError("--seeds must be >= 1");
    ClusterParams params = make_params(b.cluster);
    const Dataset data = load_dataset(b.cluster.input);
    std::optional<Dataset> centers;
    if (!b.cluster.centers.empty()) centers = load_dataset(b.cluster.centers);
    std::vector<std::size_t> sizes = b.sizes;
    if (sizes.empty()) sizes = {std::max<std::size_t>(1, data.size() / 4), std::max<std::size_t>(1, data.size() / 2), data.size()};
    for (std::size_t n : sizes) {
      if (n == 0 || n > data.size()) {
        throw ParameterError("--sizes entries must lie in [1, " + std::to_string(data.size()) + "]");
      }
    }
    std::ostringstream table;
    table << "n\twall_ms\tdistance_evals\tevals_ratio\n";
    double previous = 0.0;
    for (std::size_t n : sizes) {
      const Dataset part = prefix(data, n);
      std::vector<double> wall;
      std::vector<double> evals;
      for (std::size_t s = 0; s < b.seeds; ++s) {
        params.seed = b.cluster.seed + s;
        const RunSummary r = dispatch(part, b.cluster, params, centers);
        wall.push_back(r.wall_ms);
        evals.push_back(static_cast<double>(r.distance_evals));
      }
      const double med = median(evals);
      table << n << '\t' << median(wall) << '\t' << static_cast<std::uint64_t>(med) << '\t';
      if (previous > 0.0) {
        table << med / previous;
      } else {
        table << '-';
      }
      table << '\n';
      previous = med;
    }
    write_text(b.cluster.output, table.str(), out);
    return kExitOk;
  });
}

int cmd_validate(const std::string& input, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Dataset data = load_dataset(input);
    std::size_t lo = data.point_count(0);
    std::size_t hi = lo;
    for (std::size_t i = 1; i < data.size(); ++i) {
      lo = std::min(lo, data.point_count(i));
      hi = std::max(hi, data.point_count(i));
    }
    out << "ok: " << data.size() << " records, kind " << to_string(data.kind) << ", dimension " << data.dim
        << ", " << lo << ".." << hi << " points per record\n";
    return kExitOk;
  });
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constrained-center k-median clustering of trajectories and point sets", "kcmedian"};
  app.require_subcommand(1);

  ClusterOptions cluster;
  CLI::App* cluster_cmd = app.add_subcommand("cluster", "Cluster a dataset and emit a JSON report");
  add_cluster_flags(*cluster_cmd, cluster);
  cluster_cmd->add_option("--output", cluster.output, "Report file (default: stdout)");
  cluster_cmd->add_option("--centers-out", cluster.centers_out, "Write the chosen centers as a dataset file");
  cluster_cmd->add_flag("--timing", cluster.timing, "Include wall-clock time in the report");

  BenchOptions bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Run prefixes of a dataset and tabulate operation counts");
  add_cluster_flags(*bench_cmd, bench.cluster);
  bench_cmd->add_option("--output", bench.cluster.output, "Table file (default: stdout)");
  bench_cmd->add_option("--sizes", bench.sizes, "Prefix sizes (default: n/4 n/2 n)");
  bench_cmd->add_option("--seeds", bench.seeds, "Seeds per size; the table reports medians")->capture_default_str();

  std::string validate_input;
  CLI::App* validate_cmd = app.add_subcommand("validate", "Check a dataset file and print a summary");
  validate_cmd->add_option("input", validate_input, "Dataset file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "parameter error: " << e.what() << '\n';
    if (e.get_exit_code() == 0) return kExitOk;
    return kExitParameter;
  }

  if (cluster_cmd->parsed()) return cmd_cluster(cluster, out, err);
  if (bench_cmd->parsed()) return cmd_bench(bench, out, err);
  return cmd_validate(validate_input, out, err);
}

}  // namespace kcmedian::cli
