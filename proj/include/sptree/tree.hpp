#pragma once

#include <span>
#include <variant>

#include "sptree/config.hpp"
#include "sptree/kdtree.hpp"
#include "sptree/octree.hpp"
#include "sptree/rtree.hpp"
#include "sptree/search.hpp"
#include "sptree/tree_node.hpp"

namespace sptree {

// Any tree family behind one value type, built from a TreeConfig.
class Tree {
 public:
  using Variant = std::variant<Octree, KdTree, RTree>;

  explicit Tree(const TreeConfig& config) : config_(config), impl_(make(config)) {}

  const TreeConfig& config() const noexcept { return config_; }

  void insert(const Point3& p, PayloadId id) {
    std::visit([&](auto& t) { t.insert(p, id); }, impl_);
  }

  // Inserts points with ids first_id, first_id + 1, ...
  void insert_all(std::span<const Point3> points, std::uint64_t first_id = 0) {
    std::visit(
        [&](auto& t) {
          t.reserve(points.size());
          for (std::size_t i = 0; i < points.size(); ++i) {
            t.insert(points[i], PayloadId{first_id + i});
          }
        },
        impl_);
  }

  const NodeStore& nodes() const {
    return std::visit([](const auto& t) -> const NodeStore& { return t; }, impl_);
  }

  TreeStats stats() const { return nodes().stats(); }
  std::size_t size() const { return nodes().size(); }

  const Variant& variant() const noexcept { return impl_; }

 private:
  static Variant make(const TreeConfig& c) {
    c.validate();
    switch (c.family) {
      case Family::Octree:
        return Variant(std::in_place_type<Octree>, c.domain, c.max_depth, c.node_capacity);
      case Family::KdTree:
        return Variant(std::in_place_type<KdTree>, c.domain, c.max_depth, c.node_capacity,
                       c.split);
      case Family::RTree:
        return Variant(std::in_place_type<RTree>,
                       RTreeParams{c.degree, c.effective_min_fill()});
    }
    throw Error(ErrorKind::InvalidConfig, "unknown tree family");
  }

  TreeConfig config_;
  Variant impl_;
};

inline std::vector<NeighborPair> self_search(const Tree& tree, double r,
                                             SearchCounters* counters = nullptr) {
  return self_search(tree.nodes(), r, counters);
}

inline std::size_t count_self_pairs(const Tree& tree, double r,
                                    SearchCounters* counters = nullptr) {
  return count_self_pairs(tree.nodes(), r, counters);
}

}  // namespace sptree
