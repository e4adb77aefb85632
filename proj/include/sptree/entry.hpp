#pragma once

#include <compare>
#include <cstdint>

#include "sptree/geometry.hpp"

namespace sptree {

enum class PayloadId : std::uint64_t {};

constexpr std::uint64_t to_underlying(PayloadId id) noexcept {
  return static_cast<std::uint64_t>(id);
}

struct Entry {
  Point3 point;
  PayloadId id;

  friend constexpr bool operator==(const Entry&, const Entry&) = default;
};

struct NeighborPair {
  PayloadId a;
  PayloadId b;
  double dist = 0.0;

  // Identity is the id pair; the distance is derived data.
  friend constexpr bool operator==(const NeighborPair& l, const NeighborPair& r) noexcept {
    return l.a == r.a && l.b == r.b;
  }
  friend constexpr std::strong_ordering operator<=>(const NeighborPair& l,
                                                    const NeighborPair& r) noexcept {
    if (auto c = l.a <=> r.a; c != 0) return c;
    return l.b <=> r.b;
  }
};

}  // namespace sptree
