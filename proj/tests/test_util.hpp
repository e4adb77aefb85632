#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "sptree/sptree.hpp"

namespace sptree::testing {

// Hand-rolled generators for property-style tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  Point3 point(double lo = 0.0, double hi = 1.0) { return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)}; }

  Aabb box(double lo = -2.0, double hi = 2.0) {
    const Point3 a = point(lo, hi);
    const Point3 b = point(lo, hi);
    return {{std::min(a.x, b.x), std::min(a.y, b.y), std::min(a.z, b.z)},
            {std::max(a.x, b.x), std::max(a.y, b.y), std::max(a.z, b.z)}};
  }

  Point3 inside(const Aabb& b) {
    return {uniform(b.min.x, b.max.x), uniform(b.min.y, b.max.y), uniform(b.min.z, b.max.z)};
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline std::vector<Entry> as_entries(const std::vector<Point3>& pts) {
  std::vector<Entry> out;
  for (std::size_t i = 0; i < pts.size(); ++i) out.push_back({pts[i], PayloadId{i}});
  return out;
}

inline std::vector<NeighborPair> sorted(std::vector<NeighborPair> v) {
  std::sort(v.begin(), v.end());
  return v;
}

inline TreeConfig octree_config(int depth, std::size_t cap) {
  TreeConfig c;
  c.family = Family::Octree;
  c.max_depth = depth;
  c.node_capacity = cap;
  return c;
}

inline TreeConfig kd_config(SplitStrategy s, int depth, std::size_t cap) {
  TreeConfig c;
  c.family = Family::KdTree;
  c.split = s;
  c.max_depth = depth;
  c.node_capacity = cap;
  return c;
}

inline TreeConfig rtree_config(std::size_t degree) {
  TreeConfig c;
  c.family = Family::RTree;
  c.degree = degree;
  return c;
}

}  // namespace sptree::testing
