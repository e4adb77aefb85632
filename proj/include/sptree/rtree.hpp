#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sptree/config.hpp"
#include "sptree/error.hpp"
#include "sptree/geometry.hpp"
#include "sptree/tree_node.hpp"

namespace sptree {

struct RTreeParams {
  std::size_t degree = 5;    // M: max entries (leaf) or children (internal) per node
  std::size_t min_fill = 2;  // m: min occupancy of every non-root node

  static RTreeParams with_degree(std::size_t m_max) { return {m_max, default_min_fill(m_max)}; }

  void validate() const {
    if (degree < 2) throw Error(ErrorKind::InvalidConfig, "R-tree degree must be >= 2");
    if (min_fill < 1 || min_fill > (degree + 1) / 2) {
      throw Error(ErrorKind::InvalidConfig, "R-tree min_fill must lie in [1, ceil(M/2)]");
    }
  }
};

// Position in `child_bounds` of the child needing the least volume
// enlargement to cover p. Ties go to the smaller current volume, then to
// the earlier child.
inline std::size_t choose_subtree(std::span<const Aabb> child_bounds, const Point3& p) {
  std::size_t best = 0;
  double best_growth = std::numeric_limits<double>::infinity();
  double best_volume = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < child_bounds.size(); ++i) {
    const double v = volume(child_bounds[i]);
    const double growth = volume(enlarge(child_bounds[i], p)) - v;
    if (growth < best_growth || (growth == best_growth && v < best_volume)) {
      best = i;
      best_growth = growth;
      best_volume = v;
    }
  }
  return best;
}

struct SplitGroups {
  std::vector<std::size_t> first;
  std::vector<std::size_t> second;
};

// Guttman's quadratic split over M + 1 boxes.
//
// Seeds are the pair wasting the most volume when joined. Zero-volume
// input (collinear or coplanar points) makes every waste zero, so the
// joined margin breaks those ties. The remaining boxes are then placed one
// at a time, always the one with the strongest preference for a group
// first, into the group whose box grows least (ties: smaller volume, then
// fewer members). A group that needs every remaining box to reach
// `min_fill` takes them all.
inline SplitGroups quadratic_split(std::span<const Aabb> boxes, std::size_t min_fill) {
  const std::size_t n = boxes.size();
  if (n < 2) throw Error(ErrorKind::InvalidConfig, "quadratic_split needs at least two boxes");
  if (2 * min_fill > n) throw Error(ErrorKind::InvalidConfig, "min_fill too large to split");

  std::size_t seed_a = 0;
  std::size_t seed_b = 1;
  double worst_waste = -std::numeric_limits<double>::infinity();
  double worst_margin = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Aabb joined = merge(boxes[i], boxes[j]);
      const double waste = volume(joined) - volume(boxes[i]) - volume(boxes[j]);
      const double spread = margin(joined) - margin(boxes[i]) - margin(boxes[j]);
      if (waste > worst_waste || (waste == worst_waste && spread > worst_margin)) {
        worst_waste = waste;
        worst_margin = spread;
        seed_a = i;
        seed_b = j;
      }
    }
  }

  SplitGroups out;
  out.first.push_back(seed_a);
  out.second.push_back(seed_b);
  Aabb box_first = boxes[seed_a];
  Aabb box_second = boxes[seed_b];

  std::vector<std::size_t> rest;
  rest.reserve(n - 2);
  for (std::size_t i = 0; i < n; ++i) {
    if (i != seed_a && i != seed_b) rest.push_back(i);
  }

  while (!rest.empty()) {
    if (out.first.size() + rest.size() == min_fill) {
      for (std::size_t i : rest) out.first.push_back(i);
      break;
    }
    if (out.second.size() + rest.size() == min_fill) {
      for (std::size_t i : rest) out.second.push_back(i);
      break;
    }

    // Pick the box whose enlargement costs differ most between groups.
    std::size_t pick = 0;
    double strongest = -1.0;
    double growth_first = 0.0;
    double growth_second = 0.0;
    for (std::size_t k = 0; k < rest.size(); ++k) {
      const Aabb& b = boxes[rest[k]];
      const double g1 = volume(merge(box_first, b)) - volume(box_first);
      const double g2 = volume(merge(box_second, b)) - volume(box_second);
      const double pref = std::abs(g1 - g2);
      if (pref > strongest) {
        strongest = pref;
        pick = k;
        growth_first = g1;
        growth_second = g2;
      }
    }

    const std::size_t chosen = rest[pick];
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pick));

    bool to_first;
    if (growth_first != growth_second) {
      to_first = growth_first < growth_second;
    } else if (volume(box_first) != volume(box_second)) {
      to_first = volume(box_first) < volume(box_second);
    } else {
      to_first = out.first.size() <= out.second.size();
    }
    if (to_first) {
      out.first.push_back(chosen);
      box_first = merge(box_first, boxes[chosen]);
    } else {
      out.second.push_back(chosen);
      box_second = merge(box_second, boxes[chosen]);
    }
  }
  return out;
}

// Point R-tree with least-enlargement descent and quadratic overflow
// splitting. Points are stored as zero-extent boxes, so node bounds are
// exact minimal boxes. All leaves sit at the same depth.
class RTree : public NodeStore {
 public:
  explicit RTree(RTreeParams params) : params_(params) {
    params_.validate();
    root_ = push_node(TreeNode{});
  }

  const RTreeParams& params() const noexcept { return params_; }

  void insert(const Point3& p, PayloadId id) {
    if (!is_finite(p)) throw Error(ErrorKind::PointOutsideDomain, "R-tree points must be finite");
    if (!ids_.insert(id).second) {
      throw Error(ErrorKind::DuplicateId, "id " + std::to_string(to_underlying(id)) +
                                              " already present");
    }

    std::vector<NodeIndex> path{root_};
    while (!nodes_[path.back()].is_leaf()) {
      const TreeNode& n = nodes_[path.back()];
      child_bounds_.clear();
      for (NodeIndex c : n.children) child_bounds_.push_back(nodes_[c].bound);
      path.push_back(n.children[choose_subtree(child_bounds_, p)]);
    }

    if (entry_count_ == 0) {
      nodes_[root_].bound = Aabb::at(p);
    } else {
      for (NodeIndex i : path) nodes_[i].bound = enlarge(nodes_[i].bound, p);
    }
    nodes_[path.back()].entries.push_back({p, id});
    ++entry_count_;

    // Split upward while nodes overflow.
    std::optional<NodeIndex> sibling;
    for (std::size_t k = path.size(); k-- > 0;) {
      const NodeIndex idx = path[k];
      if (sibling) nodes_[idx].children.push_back(*sibling);
      sibling.reset();
      if (occupancy(nodes_[idx]) <= params_.degree) break;
      sibling = split(idx);
    }
    if (sibling) {
      TreeNode top;
      top.bound = merge(nodes_[root_].bound, nodes_[*sibling].bound);
      top.children = {root_, *sibling};
      root_ = push_node(std::move(top));
    }
  }

  // Number of levels; a lone root leaf has height 1.
  void reserve(std::size_t extra) { ids_.reserve(ids_.size() + extra); }

  std::size_t height() const {
    std::size_t h = 1;
    for (NodeIndex i = root_; !nodes_[i].is_leaf(); i = nodes_[i].children.front()) ++h;
    return h;
  }

 private:
  static std::size_t occupancy(const TreeNode& n) noexcept {
    return n.is_leaf() ? n.entries.size() : n.children.size();
  }

  // Splits an overflowing node in place; returns the new sibling.
  NodeIndex split(NodeIndex idx) {
    TreeNode& n = nodes_[idx];
    std::vector<Aabb> boxes;
    if (n.is_leaf()) {
      for (const Entry& e : n.entries) boxes.push_back(Aabb::at(e.point));
    } else {
      for (NodeIndex c : n.children) boxes.push_back(nodes_[c].bound);
    }
    const SplitGroups groups = quadratic_split(boxes, params_.min_fill);

    auto bound_of = [&](const std::vector<std::size_t>& members) {
      Aabb b = boxes[members.front()];
      for (std::size_t i : members) b = merge(b, boxes[i]);
      return b;
    };

    TreeNode keep;
    TreeNode other;
    keep.bound = bound_of(groups.first);
    other.bound = bound_of(groups.second);
    if (n.is_leaf()) {
      for (std::size_t i : groups.first) keep.entries.push_back(n.entries[i]);
      for (std::size_t i : groups.second) other.entries.push_back(n.entries[i]);
    } else {
      for (std::size_t i : groups.first) keep.children.push_back(n.children[i]);
      for (std::size_t i : groups.second) other.children.push_back(n.children[i]);
    }
    nodes_[idx] = std::move(keep);
    return push_node(std::move(other));
  }

  RTreeParams params_;
  std::unordered_set<PayloadId> ids_;
  std::vector<Aabb> child_bounds_;
};

}  // namespace sptree
