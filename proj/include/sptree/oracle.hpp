#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "sptree/entry.hpp"
#include "sptree/error.hpp"
#include "sptree/geometry.hpp"

// Ground truth for pair searches. Nothing here depends on the tree code.
namespace sptree::oracle {

// Every pair with distance <= r, as (smaller id, larger id), sorted. O(n^2).
inline std::vector<NeighborPair> brute_force_pairs(std::span<const Entry> entries, double r) {
  if (!(r >= 0.0)) {
    throw Error(ErrorKind::NegativeRadius, "radius must be >= 0, got " + std::to_string(r));
  }
  std::vector<NeighborPair> out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      const double d = distance(entries[i].point, entries[j].point);
      if (d <= r) {
        const auto [lo, hi] = std::minmax(entries[i].id, entries[j].id);
        out.push_back({lo, hi, d});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Same, with ids 0, 1, 2, ... in input order.
inline std::vector<NeighborPair> brute_force_pairs(std::span<const Point3> points, double r) {
  std::vector<Entry> entries;
  entries.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) entries.push_back({points[i], PayloadId{i}});
  return brute_force_pairs(entries, r);
}

// Expected number of pairs within r among n uniform points in the unit cube,
// ignoring boundary effects: C(n, 2) * (4/3) pi r^3. Boundary losses make the
// true mean slightly lower, so this leans high. Only meaningful for r << 1;
// the estimate grows without bound while the true count cannot exceed C(n, 2).
inline double expected_pair_count(std::size_t n, double r) noexcept {
  const double nn = static_cast<double>(n);
  return nn * (nn - 1.0) / 2.0 * (4.0 / 3.0) * std::numbers::pi * r * r * r;
}

// Largest radius for which expected_pair_count is treated as valid.
inline constexpr double kExpectedCountMaxRadius = 0.05;

}  // namespace sptree::oracle
