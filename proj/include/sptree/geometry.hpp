#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace sptree {

enum class Axis : int { X = 0, Y = 1, Z = 2 };

constexpr Axis axis_for_level(std::size_t level) noexcept {
  return static_cast<Axis>(level % 3);
}

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr double operator[](Axis a) const noexcept {
    switch (a) {
      case Axis::X: return x;
      case Axis::Y: return y;
      case Axis::Z: return z;
    }
    return x;
  }
  constexpr double& operator[](Axis a) noexcept {
    switch (a) {
      case Axis::X: return x;
      case Axis::Y: return y;
      case Axis::Z: return z;
    }
    return x;
  }

  friend constexpr bool operator==(const Point3&, const Point3&) = default;
};

inline bool is_finite(const Point3& p) noexcept {
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

inline double squared_distance(const Point3& p, const Point3& q) noexcept {
  const double dx = p.x - q.x;
  const double dy = p.y - q.y;
  const double dz = p.z - q.z;
  return dx * dx + dy * dy + dz * dz;
}

inline double distance(const Point3& p, const Point3& q) noexcept {
  return std::sqrt(squared_distance(p, q));
}

// Closed axis-aligned box. Zero-extent boxes are valid (points in the R-tree
// are stored this way).
struct Aabb {
  Point3 min;
  Point3 max;

  static constexpr Aabb at(const Point3& p) noexcept { return {p, p}; }
  static constexpr Aabb unit() noexcept { return {{0, 0, 0}, {1, 1, 1}}; }

  constexpr bool valid() const noexcept {
    return min.x <= max.x && min.y <= max.y && min.z <= max.z;
  }
  constexpr double extent(Axis a) const noexcept { return max[a] - min[a]; }
  constexpr Point3 center() const noexcept {
    return {0.5 * (min.x + max.x), 0.5 * (min.y + max.y), 0.5 * (min.z + max.z)};
  }

  friend constexpr bool operator==(const Aabb&, const Aabb&) = default;
};

constexpr bool contains(const Aabb& box, const Point3& p) noexcept {
  return box.min.x <= p.x && p.x <= box.max.x &&
         box.min.y <= p.y && p.y <= box.max.y &&
         box.min.z <= p.z && p.z <= box.max.z;
}

constexpr bool contains(const Aabb& outer, const Aabb& inner) noexcept {
  return contains(outer, inner.min) && contains(outer, inner.max);
}

constexpr Aabb enlarge(const Aabb& box, const Point3& p) noexcept {
  return {{std::min(box.min.x, p.x), std::min(box.min.y, p.y), std::min(box.min.z, p.z)},
          {std::max(box.max.x, p.x), std::max(box.max.y, p.y), std::max(box.max.z, p.z)}};
}

constexpr Aabb merge(const Aabb& a, const Aabb& b) noexcept {
  return enlarge(enlarge(a, b.min), b.max);
}

constexpr double volume(const Aabb& box) noexcept {
  return box.extent(Axis::X) * box.extent(Axis::Y) * box.extent(Axis::Z);
}

constexpr double surface_area(const Aabb& box) noexcept {
  const double w = box.extent(Axis::X);
  const double h = box.extent(Axis::Y);
  const double d = box.extent(Axis::Z);
  return 2.0 * (w * h + w * d + h * d);
}

// Sum of edge lengths along the three axes; used only to break ties between
// degenerate (zero-volume) boxes.
constexpr double margin(const Aabb& box) noexcept {
  return box.extent(Axis::X) + box.extent(Axis::Y) + box.extent(Axis::Z);
}

inline double squared_min_distance(const Aabb& a, const Aabb& b) noexcept {
  double sum = 0.0;
  for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
    const double gap = std::max({0.0, a.min[axis] - b.max[axis], b.min[axis] - a.max[axis]});
    sum += gap * gap;
  }
  return sum;
}

// Lower bound on the distance between any point of `a` and any point of `b`.
inline double min_distance_boxes(const Aabb& a, const Aabb& b) noexcept {
  return std::sqrt(squared_min_distance(a, b));
}

}  // namespace sptree
