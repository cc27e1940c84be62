#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kcmedian/metrics.hpp"

namespace kcmedian::cli {

enum class ElementKind { trajectory, pointset };

std::string to_string(ElementKind kind);

/// One newline-delimited record per element:
///   {"id": "...", "kind": "trajectory" | "pointset", "points": [[x, y, ...], ...]}
/// All records share one kind and one dimension; ids are unique.
struct Dataset {
  ElementKind kind = ElementKind::trajectory;
  std::size_t dim = 0;
  std::vector<Trajectory> trajectories;
  std::vector<PointSet> pointsets;

  std::size_t size() const noexcept {
    return kind == ElementKind::trajectory ? trajectories.size() : pointsets.size();
  }
  std::size_t point_count(std::size_t i) const;
  const std::string& id(std::size_t i) const;
};

/// Throws InputError naming the line (and record id when known).
Dataset parse_dataset(std::istream& in);
Dataset load_dataset(const std::string& path);

/// First `n` records.
Dataset prefix(const Dataset& data, std::size_t n);

std::string record_line(const std::string& id, ElementKind kind, const std::vector<Point>& points);

}  // namespace kcmedian::cli
