// bench: benchmark and verification driver for the sptree library.
//
//   bench run --tree octree --depth 1000 --capacity 10 --n 100000 --radius 0.001
//   bench grid --paper --out results.csv
//   bench verify-suite --jobs 4
//
// Exit codes: 0 success, 1 oracle mismatch, 2 invalid arguments.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "sptree/sptree.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitInvalid = 2;

struct RunArgs {
  std::string tree;
  std::string split = "mmas";
  int depth = 10;
  std::size_t capacity = 10;
  std::size_t degree = 5;
  std::size_t n = 0;
  double radius = -1.0;
  std::size_t runs = 5;
  std::uint64_t seed = 1;
  bool verify = false;
  std::string format = "csv";
  std::string out;
  std::string dump_pairs;
};

struct GridArgs {
  bool paper = false;
  bool full = false;
  std::string grid_file;
  std::string out;
  std::string markdown;
  std::size_t runs = 5;
  std::uint64_t seed = 1;
};

struct VerifyArgs {
  unsigned jobs = 1;
  std::size_t seeds = 10;
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(path);
  if (!f) throw sptree::Error(sptree::ErrorKind::InvalidConfig, "cannot open " + path);
  f << text;
}

int run_single(const RunArgs& a) {
  using namespace sptree;
  bench::ScenarioSpec spec;
  spec.tree.family = *parse_family(a.tree);
  spec.tree.split = *parse_strategy(a.split);
  spec.tree.max_depth = a.depth;
  spec.tree.node_capacity = a.capacity;
  spec.tree.degree = a.degree;
  spec.n = a.n;
  spec.radius = a.radius;
  spec.runs = a.runs;
  spec.seed = a.seed;
  spec.verify = a.verify;

  bench::RunOptions options;
  if (!a.dump_pairs.empty()) {
    options.pair_dump = [&](const std::vector<NeighborPair>& pairs) {
      std::ostringstream os;
      os << "a,b,dist\n";
      for (const NeighborPair& p : pairs) {
        os << to_underlying(p.a) << ',' << to_underlying(p.b) << ','
           << bench::format_double(p.dist) << '\n';
      }
      write_text(a.dump_pairs, os.str());
    };
  }
  const bench::BenchRecord rec = bench::run_scenario(spec, options);
  const auto format = a.format == "markdown" ? bench::ReportFormat::Markdown : bench::ReportFormat::Csv;
  write_text(a.out, bench::emit_report({rec}, format));
  return kExitOk;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw sptree::Error(sptree::ErrorKind::InvalidGrid, "cannot read grid file " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

int run_grid(const GridArgs& a) {
  using namespace sptree;
  std::vector<bench::ScenarioSpec> grid;
  if (!a.grid_file.empty()) {
    grid = bench::parse_grid(slurp(a.grid_file));
  } else {
    grid = bench::paper_grid({a.full, a.runs, a.seed});
  }

  // Rows are written and flushed as cells finish so an interrupted grid
  // keeps its completed cells.
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!a.out.empty()) {
    file.open(a.out);
    if (!file) throw Error(ErrorKind::InvalidConfig, "cannot open " + a.out);
    out = &file;
  }
  *out << bench::kCsvHeader << '\n' << std::flush;
  std::size_t done = 0;
  const auto records = bench::run_grid(grid, [&](const bench::BenchRecord& r) {
    *out << bench::csv_row(r) << '\n' << std::flush;
    std::cerr << "[" << ++done << "/" << grid.size() << "] " << r.spec.tree.label()
              << " n=" << r.spec.n << " r=" << bench::format_double(r.spec.radius)
              << (r.ran ? "" : " (not-run)") << '\n';
  });
  if (!a.markdown.empty()) write_text(a.markdown, bench::emit_markdown(records));
  return kExitOk;
}

int run_verify_suite(const VerifyArgs& a) {
  using namespace sptree;
  verify::MatrixOptions options;
  options.jobs = a.jobs;
  options.seeds = a.seeds;
  const auto configs = verify::matrix_configs(options);
  std::cerr << "verifying " << configs.size() << " configurations x " << options.radii.size()
            << " radii x " << options.sizes.size() << " sizes x " << options.seeds << " seeds\n";
  const auto summary = verify::run_matrix(options, [](std::size_t done, std::size_t total) {
    std::cerr << "\r" << done << "/" << total << " cells" << std::flush;
  });
  std::cerr << '\n';
  for (const auto& m : summary.mismatches) std::cout << "MISMATCH " << m.describe() << '\n';
  std::cout << summary.checks << " checks, " << summary.mismatches.size() << " mismatches\n";
  return summary.ok() ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spatial tree benchmark: insertion and fixed-radius self search timing"};
  app.require_subcommand(1);

  RunArgs run;
  auto* cmd_run = app.add_subcommand("run", "Time one tree configuration");
  cmd_run->add_option("--tree", run.tree, "Tree family")
      ->required()
      ->check(CLI::IsMember({"octree", "kdtree", "rtree"}));
  cmd_run->add_option("--split", run.split, "k-d split strategy")
      ->check(CLI::IsMember({"mmas", "msas", "cs", "sahs"}));
  cmd_run->add_option("--depth", run.depth, "Max depth below the root")->check(CLI::NonNegativeNumber);
  cmd_run->add_option("--capacity", run.capacity, "Leaf capacity")->check(CLI::PositiveNumber);
  cmd_run->add_option("--degree", run.degree, "R-tree max node occupancy")->check(CLI::Range(2, 1 << 20));
  cmd_run->add_option("--n", run.n, "Number of points")->required()->check(CLI::PositiveNumber);
  cmd_run->add_option("--radius", run.radius, "Search radius")->required()->check(CLI::NonNegativeNumber);
  cmd_run->add_option("--runs", run.runs, "Repetitions to average")->check(CLI::PositiveNumber);
  cmd_run->add_option("--seed", run.seed, "Data seed (run k uses seed + k)");
  cmd_run->add_flag("--verify", run.verify, "Check pairs against the brute-force oracle");
  cmd_run->add_option("--format", run.format, "Report format")
      ->check(CLI::IsMember({"csv", "markdown"}));
  cmd_run->add_option("--out", run.out, "Report file (default stdout)");
  cmd_run->add_option("--dump-pairs", run.dump_pairs, "Write the pair list of run 0 as csv");

  GridArgs grid;
  auto* cmd_grid = app.add_subcommand("grid", "Run a grid of configurations");
  cmd_grid->add_flag("--paper", grid.paper, "Built-in grid of the published tables (default)");
  cmd_grid->add_flag("--full", grid.full, "Include 10^6 points and every blank cell");
  auto* grid_file = cmd_grid->add_option("--grid", grid.grid_file, "Grid csv file");
  cmd_grid->add_option("--out", grid.out, "CSV output file (default stdout)");
  cmd_grid->add_option("--markdown", grid.markdown, "Also write markdown tables to this file");
  cmd_grid->add_option("--runs", grid.runs, "Repetitions per cell for the built-in grid")
      ->check(CLI::PositiveNumber);
  cmd_grid->add_option("--seed", grid.seed, "Data seed for the built-in grid");
  grid_file->excludes(cmd_grid->get_option("--paper"));

  VerifyArgs verify;
  auto* cmd_verify = app.add_subcommand("verify-suite", "Oracle-equivalence matrix");
  cmd_verify->add_option("--jobs", verify.jobs, "Concurrent cells")->check(CLI::PositiveNumber);
  cmd_verify->add_option("--seeds", verify.seeds, "Seeds per size")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*cmd_run) return run_single(run);
    if (*cmd_grid) return run_grid(grid);
    if (*cmd_verify) return run_verify_suite(verify);
  } catch (const sptree::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == sptree::ErrorKind::OracleMismatch ? kExitMismatch : kExitInvalid;
  }
  return kExitInvalid;
}
