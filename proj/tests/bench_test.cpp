#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <map>
#include <set>
#include <unistd.h>
#include <sys/wait.h>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sptree/sptree.hpp"
#include "test_util.hpp"

namespace sptree::bench {
namespace {

// ---------------------------------------------------------------- generate_uniform

TEST(GenerateUniform, EmptyAndDeterministic) {
  EXPECT_TRUE(generate_uniform(0, 1).empty());
  const auto a = generate_uniform(1000, 77);
  const auto b = generate_uniform(1000, 77);
  ASSERT_EQ(a.size(), b.size());
  EXPECT_EQ(std::memcmp(a.data(), b.data(), a.size() * sizeof(Point3)), 0);
  EXPECT_NE(generate_uniform(10, 78), generate_uniform(10, 77));
}

TEST(GenerateUniform, RespectsDomain) {
  const Aabb box{{-3, 2, 10}, {-1, 2.5, 20}};
  for (const Point3& p : generate_uniform(5000, 3, box)) EXPECT_TRUE(contains(box, p));
}

TEST(GenerateUniform, UniformStatistics) {
  const std::size_t n = 100000;
  const auto pts = generate_uniform(n, 2024);
  double sx = 0, sy = 0, sz = 0;
  std::array<std::size_t, 8> octants{};
  for (const Point3& p : pts) {
    sx += p.x;
    sy += p.y;
    sz += p.z;
    ++octants[child_index(Aabb::unit(), p)];
  }
  EXPECT_NEAR(sx / n, 0.5, 0.005);
  EXPECT_NEAR(sy / n, 0.5, 0.005);
  EXPECT_NEAR(sz / n, 0.5, 0.005);
  // Binomial(n, 1/8): sigma = sqrt(n * 1/8 * 7/8).
  const double sigma = std::sqrt(n * (1.0 / 8.0) * (7.0 / 8.0));
  for (std::size_t c : octants) EXPECT_NEAR(static_cast<double>(c), n / 8.0, 4.0 * sigma);
}

// ---------------------------------------------------------------- run_scenario

ScenarioSpec octree_spec(std::size_t n, double r) {
  ScenarioSpec s;
  s.tree = testing::octree_config(10, 10);
  s.n = n;
  s.radius = r;
  return s;
}

TEST(RunScenario, VerifiedPairCountMatchesOracle) {
  ScenarioSpec s = octree_spec(1000, 0.05);
  s.verify = true;
  const BenchRecord rec = run_scenario(s);
  EXPECT_TRUE(rec.ran);
  EXPECT_TRUE(rec.verified);
  EXPECT_EQ(rec.pair_count, oracle::brute_force_pairs(generate_uniform(1000, s.seed), 0.05).size());
}

TEST(RunScenario, RawTimesAndMeans) {
  ScenarioSpec s = octree_spec(500, 0.05);
  s.runs = 5;
  const BenchRecord rec = run_scenario(s);
  ASSERT_EQ(rec.insert_raw_ms.size(), 5u);
  ASSERT_EQ(rec.search_raw_ms.size(), 5u);
  ASSERT_EQ(rec.run_pair_counts.size(), 5u);
  double si = 0, ss = 0;
  for (int i = 0; i < 5; ++i) {
    si += rec.insert_raw_ms[i];
    ss += rec.search_raw_ms[i];
  }
  EXPECT_DOUBLE_EQ(rec.insert_ms, si / 5);
  EXPECT_DOUBLE_EQ(rec.search_ms, ss / 5);
  EXPECT_DOUBLE_EQ(rec.total_ms(), rec.insert_ms + rec.search_ms);
}

TEST(RunScenario, IdenticalSpecsGiveIdenticalCounts) {
  ScenarioSpec s = octree_spec(2000, 0.03);
  s.runs = 3;
  const BenchRecord a = run_scenario(s);
  const BenchRecord b = run_scenario(s);
  EXPECT_EQ(a.pair_count, b.pair_count);
  EXPECT_EQ(a.run_pair_counts, b.run_pair_counts);
}

TEST(RunScenario, PairCountIndependentOfTreeConfiguration) {
  std::vector<TreeConfig> configs = verify::matrix_configs({});
  std::set<std::size_t> counts;
  for (const TreeConfig& c : configs) {
    ScenarioSpec s;
    s.tree = c;
    s.n = 1500;
    s.radius = 0.04;
    s.runs = 1;
    s.seed = 5;
    counts.insert(run_scenario(s).pair_count);
  }
  EXPECT_EQ(counts.size(), 1u);
}

TEST(RunScenario, InvalidSpec) {
  ScenarioSpec s = octree_spec(0, 0.1);
  EXPECT_THROW(run_scenario(s), Error);
  s = octree_spec(10, 0.1);
  s.runs = 0;
  EXPECT_THROW(run_scenario(s), Error);
  s = octree_spec(10, -0.1);
  EXPECT_THROW(run_scenario(s), Error);
}

TEST(RunScenario, DumpsSortedPairsOfRunZero) {
  ScenarioSpec s = octree_spec(300, 0.1);
  s.runs = 2;
  std::vector<NeighborPair> dumped;
  RunOptions options;
  options.pair_dump = [&](const std::vector<NeighborPair>& p) { dumped = p; };
  const BenchRecord rec = run_scenario(s, options);
  EXPECT_EQ(dumped.size(), rec.pair_count);
  EXPECT_TRUE(std::is_sorted(dumped.begin(), dumped.end()));
}

// ---------------------------------------------------------------- grid

TEST(PaperGrid, RowSet) {
  const auto rows = paper_rows();
  EXPECT_EQ(rows.size(), kPaperRowsPerCell);
  std::map<std::string, int> per_kind;
  for (const auto& r : rows) {
    ++per_kind[std::string(to_string(r.family)) +
               (r.family == Family::KdTree ? std::string(to_string(r.split)) : "")];
  }
  EXPECT_EQ(per_kind["octree"], 9);
  EXPECT_EQ(per_kind["kdtreemmas"], 9);
  EXPECT_EQ(per_kind["kdtreemsas"], 9);
  EXPECT_EQ(per_kind["kdtreecs"], 6);
  EXPECT_EQ(per_kind["kdtreesahs"], 6);
  EXPECT_EQ(per_kind["rtree"], 3);
}

TEST(PaperGrid, BlankCellsAreNotRun) {
  const auto grid = paper_grid();
  EXPECT_EQ(grid.size(), 2u * 2u * kPaperRowsPerCell);
  std::size_t skipped = 0;
  for (const auto& s : grid) {
    const bool blank = s.tree.family == Family::RTree ||
                       (s.tree.family == Family::KdTree &&
                        (s.tree.split == SplitStrategy::CS || s.tree.split == SplitStrategy::SAHS));
    EXPECT_EQ(s.skip, blank && s.n > 10000) << s.tree.label() << " " << s.n;
    skipped += s.skip ? 1 : 0;
  }
  EXPECT_EQ(skipped, 2u * 15u);

  const auto full = paper_grid({.full = true});
  EXPECT_EQ(full.size(), 3u * 2u * kPaperRowsPerCell);
  for (const auto& s : full) EXPECT_FALSE(s.skip);
}

TEST(RunGrid, OneCellOneRecordAndSkippedCells) {
  ScenarioSpec a = octree_spec(200, 0.1);
  a.runs = 1;
  ScenarioSpec b = a;
  b.skip = true;
  std::size_t seen = 0;
  const auto recs = run_grid({a, b}, [&](const BenchRecord&) { ++seen; });
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(seen, 2u);
  EXPECT_TRUE(recs[0].ran);
  EXPECT_FALSE(recs[1].ran);
  EXPECT_EQ(run_grid({a}).size(), 1u);
}

TEST(ParseGrid, ColumnsAndDefaults) {
  const auto grid = parse_grid(
      "family,strategy,depth,capacity,n,radius,runs,seed,verify\n"
      "kdtree,sahs,100,1000,10000,0.001,2,9,1\n"
      "octree,,10,10,500,0.05,1,3,0\n");
  ASSERT_EQ(grid.size(), 2u);
  EXPECT_EQ(grid[0].tree.family, Family::KdTree);
  EXPECT_EQ(grid[0].tree.split, SplitStrategy::SAHS);
  EXPECT_EQ(grid[0].tree.max_depth, 100);
  EXPECT_EQ(grid[0].tree.node_capacity, 1000u);
  EXPECT_EQ(grid[0].runs, 2u);
  EXPECT_EQ(grid[0].seed, 9u);
  EXPECT_TRUE(grid[0].verify);
  EXPECT_EQ(grid[1].tree.family, Family::Octree);
  EXPECT_FALSE(grid[1].verify);

  const auto minimal = parse_grid("family,degree,n,radius\nrtree,25,100,0.1\n");
  EXPECT_EQ(minimal[0].tree.degree, 25u);
  EXPECT_EQ(minimal[0].runs, 5u);
}

TEST(ParseGrid, Errors) {
  auto kind_of = [](const std::string& text) {
    try {
      parse_grid(text);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::EmptyInput;  // sentinel: no error
  };
  EXPECT_EQ(kind_of(""), ErrorKind::InvalidGrid);
  EXPECT_EQ(kind_of("family,n,radius\n"), ErrorKind::InvalidGrid);
  EXPECT_EQ(kind_of("family,n\noctree,10\n"), ErrorKind::InvalidGrid);
  EXPECT_EQ(kind_of("family,n,radius\nbtree,10,0.1\n"), ErrorKind::InvalidGrid);
  EXPECT_EQ(kind_of("family,n,radius\noctree,ten,0.1\n"), ErrorKind::InvalidGrid);
  EXPECT_EQ(kind_of("family,n,radius\noctree,10,-1\n"), ErrorKind::InvalidGrid);
  EXPECT_EQ(kind_of("family,n,radius,colour\noctree,10,0.1,red\n"), ErrorKind::InvalidGrid);
  EXPECT_EQ(kind_of("family,n,radius\noctree,10\n"), ErrorKind::InvalidGrid);
}

// ---------------------------------------------------------------- reports

std::vector<BenchRecord> small_records() {
  std::vector<ScenarioSpec> grid;
  for (double r : {0.05, 0.1}) {
    for (const TreeConfig& c : {testing::octree_config(10, 10), testing::kd_config(SplitStrategy::CS, 100, 100),
                                testing::rtree_config(25)}) {
      ScenarioSpec s;
      s.tree = c;
      s.n = 300;
      s.radius = r;
      s.runs = 2;
      grid.push_back(s);
    }
  }
  grid.back().skip = true;
  return run_grid(grid);
}

TEST(EmitReport, CsvShape) {
  ScenarioSpec s = octree_spec(100, 0.1);
  s.runs = 1;
  const std::string csv = emit_csv({run_scenario(s)});
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kCsvHeader);
  EXPECT_THROW(emit_csv({}), Error);
  EXPECT_THROW(emit_markdown({}), Error);
}

TEST(EmitReport, TotalIsInsertPlusSearch) {
  const auto parsed = parse_csv(emit_csv(small_records()));
  for (const auto& r : parsed) {
    if (!r.ran) continue;
    const std::string text = csv_row(r);
    const auto fields = [&] {
      std::vector<std::string> f;
      std::stringstream ss(text);
      std::string x;
      while (std::getline(ss, x, ',')) f.push_back(x);
      return f;
    }();
    EXPECT_DOUBLE_EQ(std::stod(fields[11]), std::stod(fields[9]) + std::stod(fields[10]));
  }
}

TEST(EmitReport, CsvRoundTrip) {
  const auto records = small_records();
  const std::string csv = emit_csv(records);
  const auto parsed = parse_csv(csv);
  ASSERT_EQ(parsed.size(), records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& a = records[i];
    const auto& b = parsed[i];
    EXPECT_EQ(a.spec.tree.label(), b.spec.tree.label());
    EXPECT_EQ(a.spec.tree.family, b.spec.tree.family);
    EXPECT_EQ(a.spec.n, b.spec.n);
    EXPECT_EQ(a.spec.radius, b.spec.radius);
    EXPECT_EQ(a.spec.runs, b.spec.runs);
    EXPECT_EQ(a.spec.seed, b.spec.seed);
    EXPECT_EQ(a.ran, b.ran);
    EXPECT_EQ(a.insert_ms, b.insert_ms);
    EXPECT_EQ(a.search_ms, b.search_ms);
    EXPECT_EQ(a.pair_count, b.pair_count);
  }
  EXPECT_EQ(emit_csv(parsed), csv);
}

TEST(EmitReport, MarkdownHasOneSearchTablePerRadius) {
  const std::string md = emit_markdown(small_records());
  EXPECT_NE(md.find("### Insertion time, ms"), std::string::npos);
  EXPECT_NE(md.find("### Searching time within distance 0.05, ms"), std::string::npos);
  EXPECT_NE(md.find("### Searching time within distance 0.1, ms"), std::string::npos);
  EXPECT_NE(md.find("### Total insertion + searching time for 300 objects, ms"), std::string::npos);
  std::size_t tables = 0;
  for (std::size_t at = md.find("### "); at != std::string::npos; at = md.find("### ", at + 1)) ++tables;
  EXPECT_EQ(tables, 4u);
  EXPECT_NE(md.find("| octree(10,10) |"), std::string::npos);
  EXPECT_NE(md.find("| rtree(25) |"), std::string::npos);
}

TEST(FormatDouble, ShortestRoundTrip) {
  for (double v : {0.001, 0.00001, 1.0 / 3.0, 1e-300, 12345.678}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_EQ(format_double(0.001), "0.001");
  EXPECT_EQ(format_double(1e-05), "1e-05");
}

// ---------------------------------------------------------------- CLI

struct CliResult {
  int code;
  std::string out;
};

CliResult cli(const std::string& args) {
  const auto tmp = std::filesystem::temp_directory_path() / ("sptree_cli_" + std::to_string(::getpid()) + ".txt");
  const std::string cmd = std::string(SPTREE_BENCH_EXE) + " " + args + " > " + tmp.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  std::ifstream f(tmp);
  std::stringstream ss;
  ss << f.rdbuf();
  std::filesystem::remove(tmp);
  return {WEXITSTATUS(status), ss.str()};
}

TEST(Cli, RunEmitsCsv) {
  const auto r = cli("run --tree kdtree --split mmas --depth 100 --capacity 10 --n 2000 --radius 0.05 --runs 2 --verify");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto recs = parse_csv(r.out);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].pair_count, oracle::brute_force_pairs(generate_uniform(2000, 1), 0.05).size());
}

TEST(Cli, InvalidArgumentsExitTwo) {
  EXPECT_EQ(cli("run --tree btree --n 10 --radius 0.1").code, 2);
  EXPECT_EQ(cli("run --tree octree --n 10").code, 2);
  EXPECT_EQ(cli("run --tree octree --n 10 --radius -1").code, 2);
  EXPECT_EQ(cli("frobnicate").code, 2);
  EXPECT_EQ(cli("grid --grid /nonexistent/grid.csv").code, 2);
}

TEST(Cli, GridFromFile) {
  const auto grid = std::filesystem::temp_directory_path() / "sptree_grid_test.csv";
  {
    std::ofstream f(grid);
    f << "family,strategy,depth,capacity,degree,n,radius,runs,seed\n"
         "octree,,10,10,,400,0.05,1,3\n"
         "rtree,,,,5,400,0.05,1,3\n";
  }
  const auto r = cli("grid --grid " + grid.string());
  std::filesystem::remove(grid);
  ASSERT_EQ(r.code, 0);
  const auto recs = parse_csv(r.out);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].pair_count, recs[1].pair_count);
}

}  // namespace
}  // namespace sptree::bench
