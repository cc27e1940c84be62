#include "kcmedian_cli/dataset.hpp"

#include <fstream>
#include <istream>
#include <set>

#include <json.hpp>

#include "kcmedian/errors.hpp"

namespace kcmedian::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(std::size_t line, const std::string& id, const std::string& what) {
  std::string where = "line " + std::to_string(line);
  if (!id.empty()) where += " (record \"" + id + "\")";
  throw InputError(where + ": " + what);
}

std::vector<Point> read_points(const json& points, std::size_t line, const std::string& id) {
  if (!points.is_array() || points.empty()) fail(line, id, "\"points\" must be a nonempty array");
  std::vector<Point> out;
  out.reserve(points.size());
  for (const json& p : points) {
    if (!p.is_array() || p.empty()) fail(line, id, "every point must be a nonempty coordinate array");
    std::vector<double> coords;
    coords.reserve(p.size());
    for (const json& c : p) {
      if (!c.is_number()) fail(line, id, "coordinates must be numbers");
      coords.push_back(c.get<double>());
    }
    if (!out.empty() && coords.size() != out.front().dim()) {
      fail(line, id, "points of one record differ in dimension");
    }
    try {
      out.emplace_back(std::move(coords));
    } catch (const InputError& e) {
      fail(line, id, e.what());
    }
  }
  return out;
}

}  // namespace

std::string to_string(ElementKind kind) { return kind == ElementKind::trajectory ? "trajectory" : "pointset"; }

std::size_t Dataset::point_count(std::size_t i) const {
  return kind == ElementKind::trajectory ? trajectories[i].size() : pointsets[i].size();
}

const std::string& Dataset::id(std::size_t i) const {
  return kind == ElementKind::trajectory ? trajectories[i].id() : pointsets[i].id();
}

Dataset parse_dataset(std::istream& in) {
  Dataset data;
  std::set<std::string> ids;
  std::string text;
  std::size_t line = 0;
  bool first = true;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(text);
    } catch (const json::parse_error& e) {
      fail(line, "", std::string("malformed JSON: ") + e.what());
    }
    if (!record.is_object()) fail(line, "", "record must be a JSON object");
    if (!record.contains("id") || !record["id"].is_string()) fail(line, "", "missing string field \"id\"");
    const std::string id = record["id"].get<std::string>();
    if (id.empty()) fail(line, "", "\"id\" must be nonempty");
    if (!record.contains("kind") || !record["kind"].is_string()) fail(line, id, "missing string field \"kind\"");
    const std::string kind_text = record["kind"].get<std::string>();
    ElementKind kind;
    if (kind_text == "trajectory") {
      kind = ElementKind::trajectory;
    } else if (kind_text == "pointset") {
      kind = ElementKind::pointset;
    } else {
      fail(line, id, "\"kind\" must be \"trajectory\" or \"pointset\", got \"" + kind_text + "\"");
    }
    if (!record.contains("points")) fail(line, id, "missing field \"points\"");
    std::vector<Point> points = read_points(record["points"], line, id);

    if (first) {
      data.kind = kind;
      data.dim = points.front().dim();
      first = false;
    } else {
      if (kind != data.kind) fail(line, id, "mixes element kinds (file holds " + to_string(data.kind) + ")");
      if (points.front().dim() != data.dim) {
        fail(line, id, "dimension " + std::to_string(points.front().dim()) + " differs from the file's " +
                           std::to_string(data.dim));
      }
    }
    if (!ids.insert(id).second) fail(line, id, "duplicate id");
    if (kind == ElementKind::trajectory) {
      data.trajectories.emplace_back(id, std::move(points));
    } else {
      data.pointsets.emplace_back(id, std::move(points));
    }
  }
  if (first) throw InputError("dataset holds no records");
  return data;
}

Dataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return parse_dataset(in);
}

Dataset prefix(const Dataset& data, std::size_t n) {
  Dataset out;
  out.kind = data.kind;
  out.dim = data.dim;
  if (data.kind == ElementKind::trajectory) {
    out.trajectories.assign(data.trajectories.begin(),
                            data.trajectories.begin() + static_cast<std::ptrdiff_t>(std::min(n, data.size())));
  } else {
    out.pointsets.assign(data.pointsets.begin(),
                         data.pointsets.begin() + static_cast<std::ptrdiff_t>(std::min(n, data.size())));
  }
  return out;
}

std::string record_line(const std::string& id, ElementKind kind, const std::vector<Point>& points) {
  nlohmann::ordered_json record;
  record["id"] = id;
  record["kind"] = to_string(kind);
  nlohmann::ordered_json pts = nlohmann::ordered_json::array();
  for (const Point& p : points) pts.push_back(std::vector<double>(p.coords().begin(), p.coords().end()));
  record["points"] = std::move(pts);
  return record.dump();
}

}  // namespace kcmedian::cli
