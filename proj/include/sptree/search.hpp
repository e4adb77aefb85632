#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sptree/error.hpp"
#include "sptree/geometry.hpp"
#include "sptree/tree_node.hpp"

namespace sptree {

struct SearchCounters {
  std::size_t node_pairs = 0;        // node pairs popped from the work stack
  std::size_t leaf_comparisons = 0;  // point-to-point distance evaluations
};

namespace detail {

inline void check_radius(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw Error(ErrorKind::NegativeRadius, "search radius must be finite and >= 0, got " +
                                               std::to_string(r));
  }
}

// Squared comparisons are only a filter. The slack keeps the filter
// conservative, and the reported decision is always `distance(p, q) <= r`,
// the same predicate the brute-force oracle uses.
inline double squared_filter(double r) noexcept { return r * r * (1.0 + 1e-9); }

struct WithinRadius {
  double r;
  double r2;

  explicit WithinRadius(double radius) : r(radius), r2(squared_filter(radius)) {}

  bool boxes(const Aabb& a, const Aabb& b) const noexcept {
    return squared_min_distance(a, b) <= r2;
  }
  // Returns the distance when the points are within r, a negative value otherwise.
  double points(const Point3& p, const Point3& q) const noexcept {
    const double d2 = squared_distance(p, q);
    if (d2 > r2) return -1.0;
    const double d = std::sqrt(d2);
    return d <= r ? d : -1.0;
  }
};

template <class Sink>
void compare_leaves(std::span<const Entry> as, std::span<const Entry> bs, const WithinRadius& test,
                    Sink& sink, SearchCounters* counters) {
  for (const Entry& ea : as) {
    for (const Entry& eb : bs) {
      const double d = test.points(ea.point, eb.point);
      if (d >= 0.0) sink(ea, eb, d);
    }
  }
  if (counters) counters->leaf_comparisons += as.size() * bs.size();
}

inline bool is_empty_leaf(const TreeNode& n) noexcept {
  return n.is_leaf() && n.entries.empty();
}

}  // namespace detail

// Reports every (a in A, b in B) with distance(a, b) <= r by walking both
// trees simultaneously. Node pairs whose boxes are farther apart than r are
// never expanded. The sink is called as sink(PayloadId a, PayloadId b, double dist).
template <class Sink>
void dual_tree_search(const NodeStore& tree_a, const NodeStore& tree_b, double r, Sink&& sink,
                      SearchCounters* counters = nullptr) {
  detail::check_radius(r);
  const detail::WithinRadius test(r);
  auto emit = [&](const Entry& a, const Entry& b, double d) { sink(a.id, b.id, d); };

  std::vector<std::pair<NodeIndex, NodeIndex>> stack;
  if (test.boxes(tree_a.root().bound, tree_b.root().bound)) {
    stack.emplace_back(tree_a.root_index(), tree_b.root_index());
  }

  while (!stack.empty()) {
    const auto [ia, ib] = stack.back();
    stack.pop_back();
    if (counters) ++counters->node_pairs;
    const TreeNode& na = tree_a.node(ia);
    const TreeNode& nb = tree_b.node(ib);

    if (na.is_leaf() && nb.is_leaf()) {
      detail::compare_leaves(na.entries, nb.entries, test, emit, counters);
      continue;
    }
    // A leaf side stands in for itself as its only "child".
    const std::span<const NodeIndex> kids_a = na.is_leaf() ? std::span<const NodeIndex>(&ia, 1)
                                                           : std::span<const NodeIndex>(na.children);
    const std::span<const NodeIndex> kids_b = nb.is_leaf() ? std::span<const NodeIndex>(&ib, 1)
                                                           : std::span<const NodeIndex>(nb.children);
    for (NodeIndex ca : kids_a) {
      const TreeNode& child_a = tree_a.node(ca);
      if (detail::is_empty_leaf(child_a)) continue;
      for (NodeIndex cb : kids_b) {
        const TreeNode& child_b = tree_b.node(cb);
        if (detail::is_empty_leaf(child_b)) continue;
        if (test.boxes(child_a.bound, child_b.bound)) stack.emplace_back(ca, cb);
      }
    }
  }
}

inline std::vector<NeighborPair> dual_tree_search(const NodeStore& tree_a, const NodeStore& tree_b,
                                                  double r, SearchCounters* counters = nullptr) {
  std::vector<NeighborPair> out;
  dual_tree_search(
      tree_a, tree_b, r, [&](PayloadId a, PayloadId b, double d) { out.push_back({a, b, d}); },
      counters);
  return out;
}

// All unordered pairs within r inside one tree, each reported once with
// a < b. A node paired with itself expands into the unordered child pairs
// {c_i, c_j}, i <= j; a leaf paired with itself compares entries i < j only.
// The sink is called as sink(PayloadId lo, PayloadId hi, double dist).
template <class Sink>
void self_search(const NodeStore& tree, double r, Sink&& sink, SearchCounters* counters = nullptr) {
  detail::check_radius(r);
  const detail::WithinRadius test(r);
  auto emit = [&](const Entry& a, const Entry& b, double d) {
    if (a.id < b.id) {
      sink(a.id, b.id, d);
    } else {
      sink(b.id, a.id, d);
    }
  };

  struct Task {
    NodeIndex a;
    NodeIndex b;
  };
  std::vector<Task> stack{{tree.root_index(), tree.root_index()}};

  while (!stack.empty()) {
    const Task task = stack.back();
    stack.pop_back();
    if (counters) ++counters->node_pairs;
    const TreeNode& na = tree.node(task.a);

    if (task.a == task.b) {
      if (na.is_leaf()) {
        const auto& es = na.entries;
        for (std::size_t i = 0; i < es.size(); ++i) {
          for (std::size_t j = i + 1; j < es.size(); ++j) {
            const double d = test.points(es[i].point, es[j].point);
            if (d >= 0.0) emit(es[i], es[j], d);
          }
        }
        if (counters) counters->leaf_comparisons += es.size() * (es.size() - (es.empty() ? 0 : 1)) / 2;
        continue;
      }
      const auto& kids = na.children;
      for (std::size_t i = 0; i < kids.size(); ++i) {
        const TreeNode& ci = tree.node(kids[i]);
        if (detail::is_empty_leaf(ci)) continue;
        stack.push_back({kids[i], kids[i]});
        for (std::size_t j = i + 1; j < kids.size(); ++j) {
          const TreeNode& cj = tree.node(kids[j]);
          if (detail::is_empty_leaf(cj)) continue;
          if (test.boxes(ci.bound, cj.bound)) stack.push_back({kids[i], kids[j]});
        }
      }
      continue;
    }

    // Distinct nodes of one tree never share entries, so the plain
    // dual-tree rule applies.
    const TreeNode& nb = tree.node(task.b);
    if (na.is_leaf() && nb.is_leaf()) {
      detail::compare_leaves(na.entries, nb.entries, test, emit, counters);
      continue;
    }
    const std::span<const NodeIndex> kids_a = na.is_leaf()
                                                  ? std::span<const NodeIndex>(&task.a, 1)
                                                  : std::span<const NodeIndex>(na.children);
    const std::span<const NodeIndex> kids_b = nb.is_leaf()
                                                  ? std::span<const NodeIndex>(&task.b, 1)
                                                  : std::span<const NodeIndex>(nb.children);
    for (NodeIndex ca : kids_a) {
      const TreeNode& child_a = tree.node(ca);
      if (detail::is_empty_leaf(child_a)) continue;
      for (NodeIndex cb : kids_b) {
        const TreeNode& child_b = tree.node(cb);
        if (detail::is_empty_leaf(child_b)) continue;
        if (test.boxes(child_a.bound, child_b.bound)) stack.push_back({ca, cb});
      }
    }
  }
}

inline std::vector<NeighborPair> self_search(const NodeStore& tree, double r,
                                             SearchCounters* counters = nullptr) {
  std::vector<NeighborPair> out;
  self_search(
      tree, r, [&](PayloadId a, PayloadId b, double d) { out.push_back({a, b, d}); }, counters);
  return out;
}

inline std::size_t count_self_pairs(const NodeStore& tree, double r,
                                    SearchCounters* counters = nullptr) {
  std::size_t count = 0;
  self_search(tree, r, [&](PayloadId, PayloadId, double) { ++count; }, counters);
  return count;
}

}  // namespace sptree
