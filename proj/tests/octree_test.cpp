#include <gtest/gtest.h>

#include "sptree/sptree.hpp"
#include "test_util.hpp"

namespace sptree {
namespace {

TEST(ChildIndex, Examples) {
  const Aabb unit = Aabb::unit();
  EXPECT_EQ(child_index(unit, {0.1, 0.1, 0.1}), 0);
  EXPECT_EQ(child_index(unit, {0.9, 0.9, 0.9}), 7);
  EXPECT_EQ(child_index(unit, {0.5, 0.5, 0.5}), 7);
  EXPECT_EQ(child_index(unit, {0.9, 0.1, 0.1}), 1);
  EXPECT_EQ(child_index(unit, {0.1, 0.9, 0.1}), 2);
  EXPECT_EQ(child_index(unit, {0.1, 0.1, 0.9}), 4);
  EXPECT_EQ(child_index(unit, {1, 1, 1}), 7);
}

TEST(ChildIndex, OutsideNode) {
  try {
    child_index(Aabb::unit(), {1.1, 0.5, 0.5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PointOutsideNode);
  }
}

TreeNode leaf_with(const std::vector<Point3>& pts, int depth = 3) {
  TreeNode n;
  n.bound = Aabb::unit();
  n.remaining_depth = depth;
  for (std::size_t i = 0; i < pts.size(); ++i) n.entries.push_back({pts[i], PayloadId(i)});
  return n;
}

TEST(SplitOctant, EightEqualChildrenAndConservation) {
  TreeNode leaf = leaf_with(bench::generate_uniform(5, 2));
  const auto kids = split_octant(leaf);
  std::size_t total = 0;
  for (const TreeNode& k : kids) {
    EXPECT_DOUBLE_EQ(volume(k.bound), 1.0 / 8.0);
    EXPECT_EQ(k.remaining_depth, 2);
    total += k.entries.size();
    // Cubical parent gives cubical children.
    EXPECT_DOUBLE_EQ(k.bound.extent(Axis::X), k.bound.extent(Axis::Y));
    EXPECT_DOUBLE_EQ(k.bound.extent(Axis::Y), k.bound.extent(Axis::Z));
  }
  EXPECT_EQ(total, 5u);
  EXPECT_TRUE(leaf.entries.empty());
}

TEST(SplitOctant, AllInLowOctant) {
  TreeNode leaf = leaf_with({{0.1, 0.1, 0.1}, {0.2, 0.3, 0.4}, {0.49, 0.49, 0.49}, {0, 0, 0}, {0.3, 0.1, 0.2}});
  const auto kids = split_octant(leaf);
  EXPECT_EQ(kids[0].entries.size(), 5u);
  for (int i = 1; i < 8; ++i) EXPECT_TRUE(kids[i].entries.empty());
}

TEST(SplitOctant, DepthExhausted) {
  TreeNode leaf = leaf_with({{0.1, 0.1, 0.1}}, 0);
  try {
    split_octant(leaf);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DepthExhausted);
  }
}

TEST(OctreeProperty, ChildrenTileTheParent) {
  testing::Gen gen(3);
  for (int trial = 0; trial < 200; ++trial) {
    const Aabb parent = gen.box();
    double sum = 0.0;
    for (int a = 0; a < 8; ++a) {
      const Aabb ca = octant_bound(parent, a);
      EXPECT_TRUE(contains(parent, ca));
      sum += volume(ca);
      for (int b = a + 1; b < 8; ++b) {
        const Aabb cb = octant_bound(parent, b);
        // Interior-disjoint: the overlap has zero volume.
        const Aabb overlap{{std::max(ca.min.x, cb.min.x), std::max(ca.min.y, cb.min.y), std::max(ca.min.z, cb.min.z)},
                           {std::min(ca.max.x, cb.max.x), std::min(ca.max.y, cb.max.y), std::min(ca.max.z, cb.max.z)}};
        if (overlap.valid()) {
          EXPECT_EQ(volume(overlap), 0.0);
        }
      }
    }
    EXPECT_NEAR(sum, volume(parent), 1e-12 * std::max(1.0, volume(parent)));
    // Every sampled point of the parent lands in exactly the child its code names.
    for (int s = 0; s < 50; ++s) {
      const Point3 p = gen.inside(parent);
      EXPECT_TRUE(contains(octant_bound(parent, child_index(parent, p)), p));
    }
  }
}

TEST(OctreeProperty, StructuralAuditOnRandomBuilds) {
  for (int depth : {1, 4, 32}) {
    for (std::size_t cap : {1u, 8u, 64u}) {
      Octree t(Aabb::unit(), depth, cap);
      const auto pts = bench::generate_uniform(3000, 17 + depth + cap);
      for (std::size_t i = 0; i < pts.size(); ++i) t.insert(pts[i], PayloadId(i));
      EXPECT_TRUE(audit::check(t).empty()) << depth << "," << cap;
      EXPECT_LE(t.stats().max_observed_depth, static_cast<std::size_t>(depth));
    }
  }
}

TEST(Octree, NonCubicDomain) {
  Octree t({{-1, 0, 2}, {3, 0.5, 2.25}}, 6, 2);
  testing::Gen gen(4);
  for (int i = 0; i < 500; ++i) t.insert(gen.inside({{-1, 0, 2}, {3, 0.5, 2.25}}), PayloadId(i));
  EXPECT_TRUE(audit::check(t).empty());
}

}  // namespace
}  // namespace sptree
