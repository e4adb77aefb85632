#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <future>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "sptree/bench.hpp"
#include "sptree/config.hpp"
#include "sptree/oracle.hpp"
#include "sptree/search.hpp"
#include "sptree/tree.hpp"

// Oracle-equivalence matrix: every tree configuration's self search must
// reproduce the brute-force pair set exactly.
namespace sptree::verify {

struct MatrixOptions {
  std::vector<int> depths{1, 4, 32};
  std::vector<std::size_t> capacities{1, 8, 64};
  std::vector<std::size_t> degrees{3, 5, 25};
  std::vector<double> radii{0.001, 0.05, 0.3};
  std::vector<std::size_t> sizes{1, 2, 100, 2000};
  std::size_t seeds = 10;
  std::uint64_t first_seed = 1;
  unsigned jobs = 1;  // > 1 runs independent (n, seed) cells concurrently
};

// Octree and the four k-d strategies over depth x capacity, then the R-tree
// degrees.
inline std::vector<TreeConfig> matrix_configs(const MatrixOptions& o) {
  std::vector<TreeConfig> out;
  auto add = [&](Family f, SplitStrategy s) {
    for (int d : o.depths) {
      for (std::size_t c : o.capacities) {
        TreeConfig t;
        t.family = f;
        t.split = s;
        t.max_depth = d;
        t.node_capacity = c;
        out.push_back(t);
      }
    }
  };
  add(Family::Octree, SplitStrategy::MMAS);
  for (SplitStrategy s : {SplitStrategy::MMAS, SplitStrategy::MSAS, SplitStrategy::CS,
                          SplitStrategy::SAHS}) {
    add(Family::KdTree, s);
  }
  for (std::size_t m : o.degrees) {
    TreeConfig t;
    t.family = Family::RTree;
    t.degree = m;
    out.push_back(t);
  }
  return out;
}

struct Mismatch {
  TreeConfig config;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double radius = 0.0;
  std::size_t found = 0;
  std::size_t expected = 0;

  std::string describe() const {
    return config.label() + " n=" + std::to_string(n) + " seed=" + std::to_string(seed) +
           " r=" + bench::format_double(radius) + ": found " + std::to_string(found) +
           ", oracle " + std::to_string(expected);
  }
};

struct Summary {
  std::size_t checks = 0;
  std::vector<Mismatch> mismatches;

  bool ok() const noexcept { return mismatches.empty(); }
};

namespace detail {

inline Summary run_cell(const std::vector<TreeConfig>& configs, const std::vector<double>& radii,
                        std::size_t n, std::uint64_t seed) {
  Summary s;
  const std::vector<Point3> points = bench::generate_uniform(n, seed);
  std::vector<std::vector<NeighborPair>> truth;
  for (double r : radii) truth.push_back(oracle::brute_force_pairs(points, r));

  for (const TreeConfig& config : configs) {
    Tree tree(config);
    tree.insert_all(points);
    for (std::size_t k = 0; k < radii.size(); ++k) {
      std::vector<NeighborPair> found = self_search(tree, radii[k]);
      std::sort(found.begin(), found.end());
      ++s.checks;
      if (found != truth[k]) {
        s.mismatches.push_back({config, n, seed, radii[k], found.size(), truth[k].size()});
      }
    }
  }
  return s;
}

}  // namespace detail

// `progress(done, total)` is called after each (n, seed) cell, serialized.
template <class Progress = void (*)(std::size_t, std::size_t)>
Summary run_matrix(const MatrixOptions& o, Progress progress = [](std::size_t, std::size_t) {}) {
  const std::vector<TreeConfig> configs = matrix_configs(o);
  struct Cell {
    std::size_t n;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (std::size_t n : o.sizes) {
    for (std::size_t k = 0; k < o.seeds; ++k) cells.push_back({n, o.first_seed + k});
  }

  Summary total;
  std::mutex lock;
  std::size_t done = 0;
  auto absorb = [&](Summary part) {
    std::lock_guard guard(lock);
    total.checks += part.checks;
    for (auto& m : part.mismatches) total.mismatches.push_back(std::move(m));
    progress(++done, cells.size());
  };

  const unsigned jobs = std::max(1u, o.jobs);
  if (jobs == 1) {
    for (const Cell& c : cells) absorb(detail::run_cell(configs, o.radii, c.n, c.seed));
    return total;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::future<void>> workers;
  for (unsigned w = 0; w < jobs; ++w) {
    workers.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i = next++; i < cells.size(); i = next++) {
        absorb(detail::run_cell(configs, o.radii, cells[i].n, cells[i].seed));
      }
    }));
  }
  for (auto& w : workers) w.get();
  return total;
}

}  // namespace sptree::verify
