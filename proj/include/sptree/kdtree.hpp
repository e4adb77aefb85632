#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "sptree/config.hpp"
#include "sptree/decomposition.hpp"
#include "sptree/error.hpp"
#include "sptree/geometry.hpp"
#include "sptree/tree_node.hpp"

namespace sptree {

struct SplitPlane {
  Axis axis = Axis::X;
  double coordinate = 0.0;

  friend constexpr bool operator==(const SplitPlane&, const SplitPlane&) = default;
};

namespace detail {

inline std::vector<double> coordinates(std::span<const Entry> entries, Axis axis) {
  std::vector<double> out;
  out.reserve(entries.size());
  for (const Entry& e : entries) out.push_back(e.point[axis]);
  return out;
}

// Median of a non-empty sample; an even count takes the mean of the two
// middle values.
inline double median(std::vector<double> values) {
  const std::size_t n = values.size();
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(values.begin(), mid, values.end());
  const double upper = *mid;
  if (n % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), mid);
  return lower + 0.5 * (upper - lower);
}

inline std::array<Aabb, 2> cut(const Aabb& bound, const SplitPlane& plane) noexcept {
  Aabb left = bound;
  Aabb right = bound;
  left.max[plane.axis] = plane.coordinate;
  right.min[plane.axis] = plane.coordinate;
  return {left, right};
}

}  // namespace detail

inline SplitPlane choose_split_mmas(const TreeNode& leaf, std::size_t level) {
  if (leaf.entries.empty()) throw Error(ErrorKind::EmptyLeaf, "median split of an empty leaf");
  const Axis axis = axis_for_level(level);
  return {axis, detail::median(detail::coordinates(leaf.entries, axis))};
}

inline SplitPlane choose_split_msas(const TreeNode& leaf) {
  if (leaf.entries.empty()) throw Error(ErrorKind::EmptyLeaf, "median split of an empty leaf");
  return {Axis::X, detail::median(detail::coordinates(leaf.entries, Axis::X))};
}

inline SplitPlane choose_split_cs(const TreeNode& leaf, std::size_t level) {
  const Axis axis = axis_for_level(level);
  return {axis, leaf.bound.center()[axis]};
}

// Surface-area cost of cutting `bound` at `plane`: SA(left) * n_left +
// SA(right) * n_right, where left holds the entries strictly below the plane.
inline double sah_cost(const Aabb& bound, std::span<const Entry> entries, const SplitPlane& plane) {
  const auto [left, right] = detail::cut(bound, plane);
  std::size_t n_left = 0;
  for (const Entry& e : entries) n_left += e.point[plane.axis] < plane.coordinate ? 1 : 0;
  const std::size_t n_right = entries.size() - n_left;
  return surface_area(left) * static_cast<double>(n_left) +
         surface_area(right) * static_cast<double>(n_right);
}

// Candidates are the entry coordinates on the cycling axis; the cheapest
// wins, the smallest coordinate among equal costs.
inline SplitPlane choose_split_sahs(const TreeNode& leaf, std::size_t level) {
  if (leaf.entries.size() < 2) {
    throw Error(ErrorKind::TooFewEntries, "SAH split needs at least two entries");
  }
  const Axis axis = axis_for_level(level);
  std::vector<double> xs = detail::coordinates(leaf.entries, axis);
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();

  SplitPlane best{axis, xs.front()};
  double best_cost = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0 && xs[k] == xs[k - 1]) continue;  // same candidate, same cost
    // xs is sorted and k is the first index of its value, so exactly k
    // entries lie strictly below the candidate.
    const SplitPlane plane{axis, xs[k]};
    const auto [left, right] = detail::cut(leaf.bound, plane);
    const double cost = surface_area(left) * static_cast<double>(k) +
                        surface_area(right) * static_cast<double>(n - k);
    if (cost < best_cost) {
      best_cost = cost;
      best = plane;
    }
  }
  return best;
}

inline SplitPlane choose_split(SplitStrategy strategy, const TreeNode& leaf, std::size_t level) {
  switch (strategy) {
    case SplitStrategy::MMAS: return choose_split_mmas(leaf, level);
    case SplitStrategy::MSAS: return choose_split_msas(leaf);
    case SplitStrategy::CS: return choose_split_cs(leaf, level);
    case SplitStrategy::SAHS: return choose_split_sahs(leaf, level);
  }
  throw Error(ErrorKind::InvalidConfig, "unknown split strategy");
}

// Moves the entries of `leaf` into two children cut at `plane`: coordinate
// below the plane goes left, on or above goes right. Either child may end
// up empty.
inline std::array<TreeNode, 2> split_kd(TreeNode& leaf, const SplitPlane& plane) {
  if (!leaf.is_leaf()) throw Error(ErrorKind::InvalidConfig, "split_kd needs a leaf");
  if (leaf.remaining_depth <= 0) {
    throw Error(ErrorKind::DepthExhausted, "leaf has no depth budget left");
  }
  const Axis a = plane.axis;
  if (!(leaf.bound.min[a] <= plane.coordinate && plane.coordinate <= leaf.bound.max[a])) {
    throw Error(ErrorKind::InvalidConfig, "split plane lies outside the node bound");
  }
  const auto [left_box, right_box] = detail::cut(leaf.bound, plane);
  std::array<TreeNode, 2> kids;
  kids[0].bound = left_box;
  kids[1].bound = right_box;
  kids[0].remaining_depth = kids[1].remaining_depth = leaf.remaining_depth - 1;
  std::size_t below = 0;
  for (const Entry& e : leaf.entries) below += e.point[a] < plane.coordinate ? 1 : 0;
  kids[0].entries.reserve(below);
  kids[1].entries.reserve(leaf.entries.size() - below);
  for (Entry& e : leaf.entries) kids[e.point[a] < plane.coordinate ? 0 : 1].entries.push_back(e);
  leaf.entries.clear();
  return kids;
}

class KdTree : public DecompositionTree<KdTree> {
 public:
  KdTree(const Aabb& domain, int max_depth, std::size_t capacity, SplitStrategy strategy)
      : DecompositionTree(domain, max_depth, capacity), strategy_(strategy) {}

  SplitStrategy strategy() const noexcept { return strategy_; }

  // Plane of an internal node.
  const SplitPlane& plane(NodeIndex internal) const { return planes_[internal]; }

 private:
  friend class DecompositionTree<KdTree>;

  NodeIndex route(NodeIndex internal, const Point3& p) const {
    const SplitPlane& s = planes_[internal];
    return nodes_[internal].children[p[s.axis] < s.coordinate ? 0 : 1];
  }

  void split_leaf(NodeIndex leaf) {
    const SplitPlane plane = choose_split(strategy_, nodes_[leaf], level_of(leaf));
    attach(leaf, split_kd(nodes_[leaf], plane));
    planes_.resize(nodes_.size());
    planes_[leaf] = plane;
  }

  SplitStrategy strategy_;
  std::vector<SplitPlane> planes_;
};

}  // namespace sptree
