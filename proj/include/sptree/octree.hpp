#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "sptree/decomposition.hpp"
#include "sptree/error.hpp"
#include "sptree/geometry.hpp"
#include "sptree/tree_node.hpp"

namespace sptree {

namespace detail {

constexpr int octant_code(const Point3& center, const Point3& p) noexcept {
  return (p.x >= center.x ? 1 : 0) | (p.y >= center.y ? 2 : 0) | (p.z >= center.z ? 4 : 0);
}

}  // namespace detail

// Octant of `p` inside `node_bound`: bit 0 set when x >= center.x, bit 1 for
// y, bit 2 for z. Points on a center plane belong to the high side.
inline int child_index(const Aabb& node_bound, const Point3& p) {
  if (!contains(node_bound, p)) {
    throw Error(ErrorKind::PointOutsideNode, "point is outside the node bound");
  }
  return detail::octant_code(node_bound.center(), p);
}

inline Aabb octant_bound(const Aabb& parent, int code) noexcept {
  const Point3 c = parent.center();
  Aabb out;
  out.min.x = (code & 1) ? c.x : parent.min.x;
  out.max.x = (code & 1) ? parent.max.x : c.x;
  out.min.y = (code & 2) ? c.y : parent.min.y;
  out.max.y = (code & 2) ? parent.max.y : c.y;
  out.min.z = (code & 4) ? c.z : parent.min.z;
  out.max.z = (code & 4) ? parent.max.z : c.z;
  return out;
}

// Moves the entries of `leaf` into eight equal octant children (empty ones
// included). `leaf.entries` is left empty.
inline std::array<TreeNode, 8> split_octant(TreeNode& leaf) {
  if (!leaf.is_leaf()) throw Error(ErrorKind::InvalidConfig, "split_octant needs a leaf");
  if (leaf.remaining_depth <= 0) {
    throw Error(ErrorKind::DepthExhausted, "leaf has no depth budget left");
  }
  std::array<TreeNode, 8> kids;
  for (int code = 0; code < 8; ++code) {
    kids[code].bound = octant_bound(leaf.bound, code);
    kids[code].remaining_depth = leaf.remaining_depth - 1;
  }
  const Point3 c = leaf.bound.center();
  std::array<std::size_t, 8> counts{};
  for (const Entry& e : leaf.entries) ++counts[detail::octant_code(c, e.point)];
  for (int code = 0; code < 8; ++code) kids[code].entries.reserve(counts[code]);
  for (Entry& e : leaf.entries) kids[detail::octant_code(c, e.point)].entries.push_back(e);
  leaf.entries.clear();
  return kids;
}

class Octree : public DecompositionTree<Octree> {
 public:
  Octree(const Aabb& domain, int max_depth, std::size_t capacity)
      : DecompositionTree(domain, max_depth, capacity) {}

 private:
  friend class DecompositionTree<Octree>;

  NodeIndex route(NodeIndex internal, const Point3& p) const {
    const TreeNode& n = nodes_[internal];
    return n.children[detail::octant_code(n.bound.center(), p)];
  }

  void split_leaf(NodeIndex leaf) { attach(leaf, split_octant(nodes_[leaf])); }
};

}  // namespace sptree
