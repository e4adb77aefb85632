#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sptree/kdtree.hpp"
#include "sptree/octree.hpp"
#include "sptree/rtree.hpp"
#include "sptree/tree.hpp"

// Structural checks over built trees. Each returns the list of violated
// invariants; an empty list means the tree is well formed.
namespace sptree::audit {

using Problems = std::vector<std::string>;

namespace detail {

// Per-axis admissible coordinates along a root-to-node path: lower bounds
// are inclusive (high side of a cut), upper bounds strict (low side).
struct Halfspace {
  std::array<double, 3> lo{-std::numeric_limits<double>::infinity(),
                           -std::numeric_limits<double>::infinity(),
                           -std::numeric_limits<double>::infinity()};
  std::array<double, 3> hi_strict{std::numeric_limits<double>::infinity(),
                                  std::numeric_limits<double>::infinity(),
                                  std::numeric_limits<double>::infinity()};

  bool admits(const Point3& p) const {
    for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
      const auto i = static_cast<std::size_t>(a);
      if (p[a] < lo[i] || p[a] >= hi_strict[i]) return false;
    }
    return true;
  }
  Halfspace below(Axis a, double c) const {
    Halfspace h = *this;
    h.hi_strict[static_cast<std::size_t>(a)] = std::min(h.hi_strict[static_cast<std::size_t>(a)], c);
    return h;
  }
  Halfspace above(Axis a, double c) const {
    Halfspace h = *this;
    h.lo[static_cast<std::size_t>(a)] = std::max(h.lo[static_cast<std::size_t>(a)], c);
    return h;
  }
};

inline std::string at(NodeIndex i) { return "node " + std::to_string(i) + ": "; }

// Checks shared by octree and k-d tree. `children_of` yields the expected
// child bounds and half-spaces for an internal node, or nullopt with a
// message when the node shape is wrong.
template <class Tree, class Expand>
Problems check_decomposition(const Tree& tree, Expand&& expand) {
  Problems out;
  struct Item {
    NodeIndex idx;
    Halfspace side;
    int depth;
  };
  std::vector<Item> stack{{tree.root_index(), Halfspace{}, 0}};
  if (tree.root().remaining_depth != tree.max_depth()) {
    out.push_back("root remaining_depth differs from max_depth");
  }
  while (!stack.empty()) {
    const Item item = stack.back();
    stack.pop_back();
    const TreeNode& n = tree.node(item.idx);
    if (item.depth > tree.max_depth()) out.push_back(at(item.idx) + "deeper than max_depth");
    if (n.is_leaf()) {
      if (n.remaining_depth > 0 && n.entries.size() > tree.capacity()) {
        out.push_back(at(item.idx) + "leaf over capacity with depth budget left");
      }
      for (const Entry& e : n.entries) {
        if (!contains(n.bound, e.point)) out.push_back(at(item.idx) + "entry outside leaf bound");
        if (!item.side.admits(e.point)) out.push_back(at(item.idx) + "entry on wrong side of a cut");
      }
      continue;
    }
    if (!n.entries.empty()) out.push_back(at(item.idx) + "internal node holds entries");
    std::vector<std::pair<Aabb, Halfspace>> expected = expand(item.idx, item.side, out);
    if (expected.size() != n.children.size()) {
      out.push_back(at(item.idx) + "unexpected child count");
      continue;
    }
    for (std::size_t k = 0; k < n.children.size(); ++k) {
      const TreeNode& c = tree.node(n.children[k]);
      if (!(c.bound == expected[k].first)) out.push_back(at(n.children[k]) + "child bound mismatch");
      if (c.remaining_depth != n.remaining_depth - 1) {
        out.push_back(at(n.children[k]) + "remaining_depth not parent - 1");
      }
      stack.push_back({n.children[k], expected[k].second, item.depth + 1});
    }
  }
  return out;
}

}  // namespace detail

// Octree: leaf capacity and depth bounds, and children equal to the eight
// half-extent octants (so they tile the parent) with every entry in the
// octant chosen by the tie-to-high rule.
inline Problems check(const Octree& tree) {
  return detail::check_decomposition(
      tree, [&](NodeIndex idx, const detail::Halfspace& side, Problems&) {
        const TreeNode& n = tree.node(idx);
        const Point3 c = n.bound.center();
        std::vector<std::pair<Aabb, detail::Halfspace>> out;
        for (int code = 0; code < 8; ++code) {
          detail::Halfspace h = side;
          h = (code & 1) ? h.above(Axis::X, c.x) : h.below(Axis::X, c.x);
          h = (code & 2) ? h.above(Axis::Y, c.y) : h.below(Axis::Y, c.y);
          h = (code & 4) ? h.above(Axis::Z, c.z) : h.below(Axis::Z, c.z);
          out.emplace_back(octant_bound(n.bound, code), h);
        }
        return out;
      });
}

// k-d tree: the two children partition the parent exactly at the stored
// plane; entries strictly below the plane are on the left.
inline Problems check(const KdTree& tree) {
  return detail::check_decomposition(
      tree, [&](NodeIndex idx, const detail::Halfspace& side, Problems& problems) {
        const TreeNode& n = tree.node(idx);
        const SplitPlane& s = tree.plane(idx);
        if (!(n.bound.min[s.axis] <= s.coordinate && s.coordinate <= n.bound.max[s.axis])) {
          problems.push_back(detail::at(idx) + "plane outside node extent");
        }
        if (tree.strategy() == SplitStrategy::MSAS && s.axis != Axis::X) {
          problems.push_back(detail::at(idx) + "MSAS plane not on x");
        }
        if (tree.strategy() != SplitStrategy::MSAS && s.axis != axis_for_level(tree.level_of(idx))) {
          problems.push_back(detail::at(idx) + "plane axis does not follow depth cycling");
        }
        Aabb left = n.bound;
        Aabb right = n.bound;
        left.max[s.axis] = s.coordinate;
        right.min[s.axis] = s.coordinate;
        return std::vector<std::pair<Aabb, detail::Halfspace>>{
            {left, side.below(s.axis, s.coordinate)}, {right, side.above(s.axis, s.coordinate)}};
      });
}

// R-tree: stored bounds are the minimal boxes of their subtrees, non-root
// nodes hold between m and M items, an internal root has at least two
// children, and every leaf is at the same depth.
inline Problems check(const RTree& tree) {
  Problems out;
  const std::size_t m = tree.params().min_fill;
  const std::size_t m_max = tree.params().degree;
  std::optional<std::size_t> leaf_depth;

  // Post-order so each node's recomputed box is available to its parent.
  struct Item {
    NodeIndex idx;
    std::size_t depth;
    bool expanded;
  };
  std::vector<Aabb> recomputed(tree.node_count());
  std::vector<Item> stack{{tree.root_index(), 0, false}};
  while (!stack.empty()) {
    Item item = stack.back();
    stack.pop_back();
    const TreeNode& n = tree.node(item.idx);
    const bool is_root = item.idx == tree.root_index();
    if (!item.expanded) {
      const std::size_t occ = n.is_leaf() ? n.entries.size() : n.children.size();
      if (!is_root && (occ < m || occ > m_max)) {
        out.push_back(detail::at(item.idx) + "occupancy " + std::to_string(occ) + " outside [" +
                      std::to_string(m) + "," + std::to_string(m_max) + "]");
      }
      if (is_root && occ > m_max) out.push_back("root over degree");
      if (is_root && !n.is_leaf() && occ < 2) out.push_back("internal root with < 2 children");
      if (n.is_leaf()) {
        if (!leaf_depth) leaf_depth = item.depth;
        if (*leaf_depth != item.depth) out.push_back(detail::at(item.idx) + "leaf depth differs");
        if (n.entries.empty()) {
          if (!(is_root && tree.empty())) out.push_back(detail::at(item.idx) + "empty leaf");
          continue;
        }
        Aabb box = Aabb::at(n.entries.front().point);
        for (const Entry& e : n.entries) box = enlarge(box, e.point);
        recomputed[item.idx] = box;
        if (!(box == n.bound)) out.push_back(detail::at(item.idx) + "leaf bound not minimal");
        continue;
      }
      stack.push_back({item.idx, item.depth, true});
      for (NodeIndex c : n.children) stack.push_back({c, item.depth + 1, false});
      continue;
    }
    Aabb box = recomputed[n.children.front()];
    for (NodeIndex c : n.children) box = merge(box, recomputed[c]);
    recomputed[item.idx] = box;
    if (!(box == n.bound)) out.push_back(detail::at(item.idx) + "internal bound not minimal");
  }
  return out;
}

inline Problems check(const Tree& tree) {
  return std::visit([](const auto& t) { return check(t); }, tree.variant());
}

// The multiset of stored (point, id) entries equals `inserted`.
inline Problems check_conservation(const NodeStore& tree, std::span<const Entry> inserted) {
  auto key = [](const Entry& l, const Entry& r) {
    if (l.id != r.id) return l.id < r.id;
    if (l.point.x != r.point.x) return l.point.x < r.point.x;
    if (l.point.y != r.point.y) return l.point.y < r.point.y;
    return l.point.z < r.point.z;
  };
  std::vector<Entry> stored = tree.all_entries();
  std::vector<Entry> expected(inserted.begin(), inserted.end());
  std::sort(stored.begin(), stored.end(), key);
  std::sort(expected.begin(), expected.end(), key);
  Problems out;
  if (tree.size() != inserted.size()) out.push_back("entry counter differs from inserted count");
  if (stored != expected) out.push_back("stored entries differ from inserted entries");
  return out;
}

}  // namespace sptree::audit
