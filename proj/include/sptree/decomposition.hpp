#pragma once

#include <cstddef>
#include <string>
#include <unordered_set>
#include <vector>

#include "sptree/error.hpp"
#include "sptree/geometry.hpp"
#include "sptree/tree_node.hpp"

namespace sptree {

// Shared insertion for space-partitioning trees (octree, k-d tree).
//
// Derived must provide
//   NodeIndex route(NodeIndex internal, const Point3& p) const;
//   void split_leaf(NodeIndex leaf);
//
// A new entry is appended to the leaf covering it. A leaf is split only when
// it holds more than `capacity` entries and still has depth budget left;
// leaves at remaining depth 0 absorb any number of entries. Splitting
// cascades, so after every insert each leaf with budget left is within
// capacity.
template <class Derived>
class DecompositionTree : public NodeStore {
 public:
  void insert(const Point3& p, PayloadId id) {
    if (!is_finite(p) || !contains(root().bound, p)) {
      throw Error(ErrorKind::PointOutsideDomain, "point is not inside the tree domain");
    }
    if (!ids_.insert(id).second) {
      throw Error(ErrorKind::DuplicateId, "id " + std::to_string(to_underlying(id)) +
                                              " already present");
    }
    NodeIndex idx = root_;
    while (!nodes_[idx].is_leaf()) idx = derived().route(idx, p);
    nodes_[idx].entries.push_back({p, id});
    ++entry_count_;
    split_overflowing(idx);
  }

  // Room for `extra` more ids without rehashing.
  void reserve(std::size_t extra) { ids_.reserve(ids_.size() + extra); }

  int max_depth() const noexcept { return max_depth_; }
  std::size_t capacity() const noexcept { return capacity_; }
  const Aabb& domain() const noexcept { return nodes_.front().bound; }

  // Depth of a node below the root, derived from its remaining budget.
  std::size_t level_of(NodeIndex i) const noexcept {
    return static_cast<std::size_t>(max_depth_ - nodes_[i].remaining_depth);
  }

 protected:
  DecompositionTree(const Aabb& domain, int max_depth, std::size_t capacity)
      : max_depth_(max_depth), capacity_(capacity) {
    if (max_depth < 0) throw Error(ErrorKind::InvalidConfig, "max_depth must be >= 0");
    if (capacity < 1) throw Error(ErrorKind::InvalidConfig, "node_capacity must be >= 1");
    if (!domain.valid()) throw Error(ErrorKind::InvalidConfig, "invalid domain box");
    TreeNode root;
    root.bound = domain;
    root.remaining_depth = max_depth;
    root_ = push_node(std::move(root));
  }

  // Installs already-built children under `parent`, which must be a leaf
  // whose entries have been moved out.
  template <class Children>
  void attach(NodeIndex parent, Children&& kids) {
    std::vector<NodeIndex> ids;
    ids.reserve(kids.size());
    for (auto& k : kids) ids.push_back(push_node(std::move(k)));
    nodes_[parent].entries.clear();
    nodes_[parent].entries.shrink_to_fit();
    nodes_[parent].children = std::move(ids);
  }

 private:
  Derived& derived() noexcept { return static_cast<Derived&>(*this); }

  void split_overflowing(NodeIndex start) {
    std::vector<NodeIndex> pending{start};
    while (!pending.empty()) {
      const NodeIndex i = pending.back();
      pending.pop_back();
      if (nodes_[i].entries.size() <= capacity_ || nodes_[i].remaining_depth <= 0) continue;
      derived().split_leaf(i);
      for (NodeIndex c : nodes_[i].children) pending.push_back(c);
    }
  }

  int max_depth_;
  std::size_t capacity_;
  std::unordered_set<PayloadId> ids_;
};

}  // namespace sptree
