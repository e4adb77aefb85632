#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "sptree/error.hpp"
#include "sptree/geometry.hpp"

namespace sptree {

enum class Family { Octree, KdTree, RTree };

// k-d splitting rules:
//   MMAS  median of the entries, axis cycling x -> y -> z with node depth
//   MSAS  median of the entries, always on x
//   CS    geometric center of the node bound, axis cycling
//   SAHS  surface-area heuristic over the entry coordinates, axis cycling
enum class SplitStrategy { MMAS, MSAS, CS, SAHS };

constexpr std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::Octree: return "octree";
    case Family::KdTree: return "kdtree";
    case Family::RTree: return "rtree";
  }
  return "?";
}

constexpr std::string_view to_string(SplitStrategy s) noexcept {
  switch (s) {
    case SplitStrategy::MMAS: return "mmas";
    case SplitStrategy::MSAS: return "msas";
    case SplitStrategy::CS: return "cs";
    case SplitStrategy::SAHS: return "sahs";
  }
  return "?";
}

inline std::optional<Family> parse_family(std::string_view s) noexcept {
  if (s == "octree") return Family::Octree;
  if (s == "kdtree" || s == "kd" || s == "k-d") return Family::KdTree;
  if (s == "rtree" || s == "r-tree") return Family::RTree;
  return std::nullopt;
}

inline std::optional<SplitStrategy> parse_strategy(std::string_view s) noexcept {
  if (s == "mmas") return SplitStrategy::MMAS;
  if (s == "msas") return SplitStrategy::MSAS;
  if (s == "cs") return SplitStrategy::CS;
  if (s == "sahs" || s == "sah") return SplitStrategy::SAHS;
  return std::nullopt;
}

// Default R-tree minimum fill: ceil(0.4 * M), never below 1.
constexpr std::size_t default_min_fill(std::size_t degree) noexcept {
  const std::size_t m = (4 * degree + 9) / 10;
  return m == 0 ? 1 : m;
}

// Only the fields relevant to `family` are read: max_depth, node_capacity
// and domain for the decomposition trees, split for the k-d tree, degree and
// min_fill for the R-tree.
struct TreeConfig {
  Family family = Family::Octree;
  int max_depth = 10;
  std::size_t node_capacity = 10;
  SplitStrategy split = SplitStrategy::MMAS;
  std::size_t degree = 5;
  std::size_t min_fill = 0;  // 0 selects default_min_fill(degree)
  Aabb domain = Aabb::unit();

  std::size_t effective_min_fill() const noexcept {
    return min_fill == 0 ? default_min_fill(degree) : min_fill;
  }

  void validate() const {
    switch (family) {
      case Family::Octree:
      case Family::KdTree:
        if (max_depth < 0) throw Error(ErrorKind::InvalidConfig, "max_depth must be >= 0");
        if (node_capacity < 1) throw Error(ErrorKind::InvalidConfig, "node_capacity must be >= 1");
        if (!domain.valid() || !is_finite(domain.min) || !is_finite(domain.max)) {
          throw Error(ErrorKind::InvalidConfig, "domain must be a finite, valid box");
        }
        break;
      case Family::RTree: {
        if (degree < 2) throw Error(ErrorKind::InvalidConfig, "R-tree degree must be >= 2");
        const std::size_t m = effective_min_fill();
        if (m < 1 || m > (degree + 1) / 2) {
          throw Error(ErrorKind::InvalidConfig, "R-tree min_fill must lie in [1, ceil(M/2)]");
        }
        break;
      }
    }
  }

  // Short row label in the style "octree(10,10)", "kdtree-mmas(1000,10)", "rtree(25)".
  std::string label() const {
    switch (family) {
      case Family::Octree:
        return "octree(" + std::to_string(max_depth) + "," + std::to_string(node_capacity) + ")";
      case Family::KdTree:
        return "kdtree-" + std::string(to_string(split)) + "(" + std::to_string(max_depth) + "," +
               std::to_string(node_capacity) + ")";
      case Family::RTree:
        return "rtree(" + std::to_string(degree) + ")";
    }
    return "?";
  }
};

}  // namespace sptree
