#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "sptree/entry.hpp"
#include "sptree/geometry.hpp"

namespace sptree {

using NodeIndex = std::uint32_t;

// One node of any tree family. A node with no children is a leaf; leaves own
// their entries directly. For octree and k-d trees `bound` is the region the
// node is responsible for; for the R-tree it is the minimal bounding box of
// the subtree.
struct TreeNode {
  Aabb bound;
  std::vector<NodeIndex> children;
  std::vector<Entry> entries;
  int remaining_depth = 0;

  bool is_leaf() const noexcept { return children.empty(); }
};

struct TreeStats {
  std::size_t entry_count = 0;
  std::size_t node_count = 0;
  std::size_t max_observed_depth = 0;
  std::size_t max_leaf_occupancy = 0;

  friend constexpr bool operator==(const TreeStats&, const TreeStats&) = default;
};

// Arena of nodes shared by every tree family. Search and auditing only ever
// see this read-only view, which is what makes the traversal family-agnostic.
class NodeStore {
 public:
  const TreeNode& node(NodeIndex i) const { return nodes_[i]; }
  const TreeNode& root() const { return nodes_[root_]; }
  NodeIndex root_index() const noexcept { return root_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t size() const noexcept { return entry_count_; }
  bool empty() const noexcept { return entry_count_ == 0; }

  TreeStats stats() const {
    TreeStats s;
    s.node_count = nodes_.size();
    std::vector<std::pair<NodeIndex, std::size_t>> stack{{root_, 0}};
    while (!stack.empty()) {
      auto [idx, depth] = stack.back();
      stack.pop_back();
      const TreeNode& n = nodes_[idx];
      s.max_observed_depth = std::max(s.max_observed_depth, depth);
      if (n.is_leaf()) {
        s.entry_count += n.entries.size();
        s.max_leaf_occupancy = std::max(s.max_leaf_occupancy, n.entries.size());
      } else {
        for (NodeIndex c : n.children) stack.emplace_back(c, depth + 1);
      }
    }
    return s;
  }

  // Visits every leaf with its depth below the root.
  template <class Fn>
  void for_each_leaf(Fn&& fn) const {
    std::vector<std::pair<NodeIndex, std::size_t>> stack{{root_, 0}};
    while (!stack.empty()) {
      auto [idx, depth] = stack.back();
      stack.pop_back();
      const TreeNode& n = nodes_[idx];
      if (n.is_leaf()) {
        std::invoke(fn, n, depth);
      } else {
        for (NodeIndex c : n.children) stack.emplace_back(c, depth + 1);
      }
    }
  }

  std::vector<Entry> all_entries() const {
    std::vector<Entry> out;
    out.reserve(entry_count_);
    for_each_leaf([&](const TreeNode& leaf, std::size_t) {
      out.insert(out.end(), leaf.entries.begin(), leaf.entries.end());
    });
    return out;
  }

 protected:
  NodeStore() = default;

  NodeIndex push_node(TreeNode n) {
    nodes_.push_back(std::move(n));
    return static_cast<NodeIndex>(nodes_.size() - 1);
  }

  std::vector<TreeNode> nodes_;
  NodeIndex root_ = 0;
  std::size_t entry_count_ = 0;
};

}  // namespace sptree
