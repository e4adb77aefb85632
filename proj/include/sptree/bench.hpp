#pragma once

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "sptree/config.hpp"
#include "sptree/error.hpp"
#include "sptree/geometry.hpp"
#include "sptree/oracle.hpp"
#include "sptree/search.hpp"
#include "sptree/tree.hpp"

namespace sptree::bench {

// n points i.i.d. uniform over `domain`. The generator is std::mt19937_64
// seeded with `seed`; each coordinate takes the top 53 bits of one draw as
// u in [0, 1) and maps it to min + u * (max - min), in x, y, z order. The
// conversion is spelled out rather than left to a distribution object so
// the sequence is identical across standard libraries.
inline std::vector<Point3> generate_uniform(std::size_t n, std::uint64_t seed,
                                            const Aabb& domain = Aabb::unit()) {
  std::mt19937_64 rng(seed);
  auto coord = [&](double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
  };
  std::vector<Point3> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = coord(domain.min.x, domain.max.x);
    const double y = coord(domain.min.y, domain.max.y);
    const double z = coord(domain.min.z, domain.max.z);
    out.push_back({x, y, z});
  }
  return out;
}

struct ScenarioSpec {
  TreeConfig tree;
  std::size_t n = 10000;
  double radius = 0.001;
  std::size_t runs = 5;
  std::uint64_t seed = 1;
  bool verify = false;
  std::size_t verify_cap = 5000;  // verify only when n <= verify_cap
  bool skip = false;              // grid cell deliberately left out ("not-run")

  void validate() const {
    tree.validate();
    if (n < 1) throw Error(ErrorKind::InvalidConfig, "n must be >= 1");
    if (runs < 1) throw Error(ErrorKind::InvalidConfig, "runs must be >= 1");
    if (!(radius >= 0.0) || !std::isfinite(radius)) {
      throw Error(ErrorKind::NegativeRadius, "radius must be finite and >= 0");
    }
  }
};

// One grid cell. Run k uses fresh data generated from seed + k; pair_count
// is the count for run 0 (the data generated from `seed` itself), the
// per-run counts are kept alongside the raw timings.
struct BenchRecord {
  ScenarioSpec spec;
  bool ran = false;
  double insert_ms = 0.0;
  double search_ms = 0.0;
  std::size_t pair_count = 0;
  std::vector<double> insert_raw_ms;
  std::vector<double> search_raw_ms;
  std::vector<std::size_t> run_pair_counts;
  bool verified = false;

  double total_ms() const noexcept { return insert_ms + search_ms; }
};

namespace detail {

inline double mean(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

template <class Fn>
double time_ms(Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

}  // namespace detail

struct RunOptions {
  // Receives the sorted pair list of run 0 when set.
  std::function<void(const std::vector<NeighborPair>&)> pair_dump;
};

inline BenchRecord run_scenario(const ScenarioSpec& spec, const RunOptions& options = {}) {
  BenchRecord rec;
  rec.spec = spec;
  if (spec.skip) return rec;
  spec.validate();

  for (std::size_t run = 0; run < spec.runs; ++run) {
    const std::vector<Point3> points = generate_uniform(spec.n, spec.seed + run, spec.tree.domain);
    Tree tree(spec.tree);
    rec.insert_raw_ms.push_back(detail::time_ms([&] { tree.insert_all(points); }));
    std::size_t pairs = 0;
    rec.search_raw_ms.push_back(
        detail::time_ms([&] { pairs = count_self_pairs(tree, spec.radius); }));
    rec.run_pair_counts.push_back(pairs);

    const bool want_list = run == 0 && options.pair_dump;
    const bool check = spec.verify && spec.n <= spec.verify_cap;
    if (want_list || check) {
      std::vector<NeighborPair> found = self_search(tree, spec.radius);
      std::sort(found.begin(), found.end());
      if (check) {
        const auto truth = oracle::brute_force_pairs(points, spec.radius);
        if (found != truth || pairs != truth.size()) {
          throw Error(ErrorKind::OracleMismatch,
                      spec.tree.label() + " n=" + std::to_string(spec.n) + " seed=" +
                          std::to_string(spec.seed + run) + ": tree found " +
                          std::to_string(found.size()) + " pairs, oracle " +
                          std::to_string(truth.size()));
        }
        rec.verified = true;
      }
      if (want_list) options.pair_dump(found);
    }
  }
  rec.ran = true;
  rec.insert_ms = detail::mean(rec.insert_raw_ms);
  rec.search_ms = detail::mean(rec.search_raw_ms);
  rec.pair_count = rec.run_pair_counts.front();
  return rec;
}

// Runs cells in order on the calling thread; `on_record` sees each record
// as soon as its cell finishes.
inline std::vector<BenchRecord> run_grid(
    const std::vector<ScenarioSpec>& grid,
    const std::function<void(const BenchRecord&)>& on_record = {}) {
  std::vector<BenchRecord> out;
  out.reserve(grid.size());
  for (const ScenarioSpec& cell : grid) {
    out.push_back(run_scenario(cell));
    if (on_record) on_record(out.back());
  }
  return out;
}

inline constexpr std::size_t kPaperRowsPerCell = 42;

// Row set of the published tables for one (n, radius): octree, k-d MMAS and
// k-d MSAS over depth {10,100,1000} x capacity {10,100,1000}; k-d CS and SAHS
// over depth {10,100,1000} x capacity {100,1000}; R-tree degree {5,25,125}.
inline std::vector<TreeConfig> paper_rows() {
  std::vector<TreeConfig> rows;
  const int depths[] = {10, 100, 1000};
  auto decomposition = [&](Family f, SplitStrategy s, std::initializer_list<std::size_t> caps) {
    for (std::size_t cap : caps) {
      for (int d : depths) {
        TreeConfig c;
        c.family = f;
        c.split = s;
        c.max_depth = d;
        c.node_capacity = cap;
        rows.push_back(c);
      }
    }
  };
  decomposition(Family::Octree, SplitStrategy::MMAS, {10, 100, 1000});
  decomposition(Family::KdTree, SplitStrategy::MMAS, {10, 100, 1000});
  decomposition(Family::KdTree, SplitStrategy::MSAS, {10, 100, 1000});
  decomposition(Family::KdTree, SplitStrategy::CS, {100, 1000});
  decomposition(Family::KdTree, SplitStrategy::SAHS, {100, 1000});
  for (std::size_t m : {5u, 25u, 125u}) {
    TreeConfig c;
    c.family = Family::RTree;
    c.degree = m;
    rows.push_back(c);
  }
  return rows;
}

struct PaperGridOptions {
  bool full = false;  // add n = 10^6 and run every cell
  std::size_t runs = 5;
  std::uint64_t seed = 1;
};

// The published tables leave CS, SAHS and R-tree blank beyond 10^4 points;
// those cells are emitted as skipped unless `full` is set.
inline std::vector<ScenarioSpec> paper_grid(const PaperGridOptions& options = {}) {
  std::vector<std::size_t> sizes{10000, 100000};
  if (options.full) sizes.push_back(1000000);
  const double radii[] = {0.001, 0.00001};
  std::vector<ScenarioSpec> grid;
  for (std::size_t n : sizes) {
    for (double r : radii) {
      for (const TreeConfig& row : paper_rows()) {
        ScenarioSpec s;
        s.tree = row;
        s.n = n;
        s.radius = r;
        s.runs = options.runs;
        s.seed = options.seed;
        const bool blank_in_tables =
            row.family == Family::RTree ||
            (row.family == Family::KdTree &&
             (row.split == SplitStrategy::CS || row.split == SplitStrategy::SAHS));
        s.skip = blank_in_tables && n > 10000 && !options.full;
        grid.push_back(s);
      }
    }
  }
  return grid;
}

// ---------------------------------------------------------------------------
// CSV

inline constexpr std::string_view kCsvHeader =
    "family,strategy,depth,capacity,degree,n,radius,runs,seed,insert_ms,search_ms,total_ms,"
    "pair_count";
inline constexpr std::string_view kNotRun = "not-run";

// Shortest decimal text that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace detail {

inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    std::string_view field = line.substr(start, comma == std::string_view::npos ? line.npos
                                                                                : comma - start);
    while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.remove_suffix(1);
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    out.emplace_back(field);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <class T>
std::optional<T> parse_number(std::string_view s) {
  T value{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

inline std::vector<std::string> lines_of(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(line);
  }
  return out;
}

inline bool uses_depth(Family f) { return f != Family::RTree; }

}  // namespace detail

inline std::string csv_row(const BenchRecord& r) {
  const TreeConfig& t = r.spec.tree;
  std::string row;
  row += to_string(t.family);
  row += ',';
  if (t.family == Family::KdTree) row += to_string(t.split);
  row += ',';
  if (detail::uses_depth(t.family)) row += std::to_string(t.max_depth);
  row += ',';
  if (detail::uses_depth(t.family)) row += std::to_string(t.node_capacity);
  row += ',';
  if (t.family == Family::RTree) row += std::to_string(t.degree);
  row += ',' + std::to_string(r.spec.n);
  row += ',' + format_double(r.spec.radius);
  row += ',' + std::to_string(r.spec.runs);
  row += ',' + std::to_string(r.spec.seed);
  if (r.ran) {
    row += ',' + format_double(r.insert_ms);
    row += ',' + format_double(r.search_ms);
    row += ',' + format_double(r.total_ms());
    row += ',' + std::to_string(r.pair_count);
  } else {
    for (int i = 0; i < 4; ++i) row += "," + std::string(kNotRun);
  }
  return row;
}

inline std::string emit_csv(const std::vector<BenchRecord>& records) {
  if (records.empty()) throw Error(ErrorKind::EmptyInput, "no records to report");
  std::string out(kCsvHeader);
  out += '\n';
  for (const BenchRecord& r : records) out += csv_row(r) + '\n';
  return out;
}

namespace detail {

// Column lookup shared by the report parser and the grid parser.
class CsvTable {
 public:
  CsvTable(std::string_view text, ErrorKind on_error) : kind_(on_error) {
    auto lines = lines_of(text);
    if (lines.empty()) throw Error(kind_, "empty csv");
    header_ = split_csv_line(lines.front());
    for (std::size_t i = 1; i < lines.size(); ++i) rows_.push_back(split_csv_line(lines[i]));
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (rows_[i].size() != header_.size()) {
        throw Error(kind_, "row " + std::to_string(i + 1) + " has " +
                               std::to_string(rows_[i].size()) + " fields, header has " +
                               std::to_string(header_.size()));
      }
    }
  }

  std::size_t rows() const noexcept { return rows_.size(); }
  bool has(std::string_view column) const { return index(column).has_value(); }

  // Field text, or "" when the column is absent.
  std::string get(std::size_t row, std::string_view column) const {
    const auto i = index(column);
    return i ? rows_[row][*i] : std::string();
  }

  template <class T>
  T number(std::size_t row, std::string_view column, T fallback) const {
    const std::string s = get(row, column);
    if (s.empty()) return fallback;
    const auto v = parse_number<T>(s);
    if (!v) throw Error(kind_, "row " + std::to_string(row + 1) + ": bad " +
                                   std::string(column) + " '" + s + "'");
    return *v;
  }

  const std::vector<std::string>& header() const noexcept { return header_; }
  ErrorKind kind() const noexcept { return kind_; }

 private:
  std::optional<std::size_t> index(std::string_view column) const {
    for (std::size_t i = 0; i < header_.size(); ++i) {
      if (header_[i] == column) return i;
    }
    return std::nullopt;
  }

  ErrorKind kind_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

inline TreeConfig parse_tree_columns(const CsvTable& t, std::size_t row) {
  TreeConfig c;
  const std::string fam = t.get(row, "family");
  const auto family = parse_family(fam);
  if (!family) throw Error(t.kind(), "row " + std::to_string(row + 1) + ": unknown family '" + fam + "'");
  c.family = *family;
  if (const std::string s = t.get(row, "strategy"); !s.empty()) {
    const auto strategy = parse_strategy(s);
    if (!strategy) throw Error(t.kind(), "row " + std::to_string(row + 1) + ": unknown strategy '" + s + "'");
    c.split = *strategy;
  }
  c.max_depth = t.number<int>(row, "depth", c.max_depth);
  c.node_capacity = t.number<std::size_t>(row, "capacity", c.node_capacity);
  c.degree = t.number<std::size_t>(row, "degree", c.degree);
  return c;
}

}  // namespace detail

// Inverse of emit_csv. Raw per-run times are not part of the report, so
// the parsed records carry only the means.
inline std::vector<BenchRecord> parse_csv(std::string_view text) {
  const detail::CsvTable table(text, ErrorKind::InvalidGrid);
  std::vector<BenchRecord> out;
  for (std::size_t i = 0; i < table.rows(); ++i) {
    BenchRecord r;
    r.spec.tree = detail::parse_tree_columns(table, i);
    r.spec.n = table.number<std::size_t>(i, "n", 0);
    r.spec.radius = table.number<double>(i, "radius", 0.0);
    r.spec.runs = table.number<std::size_t>(i, "runs", 0);
    r.spec.seed = table.number<std::uint64_t>(i, "seed", 0);
    if (table.get(i, "pair_count") == kNotRun) {
      r.spec.skip = true;
    } else {
      r.ran = true;
      r.insert_ms = table.number<double>(i, "insert_ms", 0.0);
      r.search_ms = table.number<double>(i, "search_ms", 0.0);
      r.pair_count = table.number<std::size_t>(i, "pair_count", 0);
    }
    out.push_back(std::move(r));
  }
  return out;
}

// Grid file: csv whose columns name ScenarioSpec fields (family, strategy,
// depth, capacity, degree, n, radius, runs, seed, verify). family, n and
// radius are required; the rest default.
inline std::vector<ScenarioSpec> parse_grid(std::string_view text) {
  const detail::CsvTable table(text, ErrorKind::InvalidGrid);
  static const std::vector<std::string> known{"family", "strategy", "depth", "capacity",
                                              "degree", "n",        "radius", "runs",
                                              "seed",   "verify"};
  for (const std::string& col : table.header()) {
    if (std::find(known.begin(), known.end(), col) == known.end()) {
      throw Error(ErrorKind::InvalidGrid, "unknown grid column '" + col + "'");
    }
  }
  for (const char* required : {"family", "n", "radius"}) {
    if (!table.has(required)) {
      throw Error(ErrorKind::InvalidGrid, std::string("grid is missing column '") + required + "'");
    }
  }
  if (table.rows() == 0) throw Error(ErrorKind::InvalidGrid, "grid has no cells");

  std::vector<ScenarioSpec> grid;
  for (std::size_t i = 0; i < table.rows(); ++i) {
    ScenarioSpec s;
    s.tree = detail::parse_tree_columns(table, i);
    s.n = table.number<std::size_t>(i, "n", 0);
    s.radius = table.number<double>(i, "radius", -1.0);
    s.runs = table.number<std::size_t>(i, "runs", s.runs);
    s.seed = table.number<std::uint64_t>(i, "seed", s.seed);
    const std::string v = table.get(i, "verify");
    if (v == "1" || v == "true") {
      s.verify = true;
    } else if (!(v.empty() || v == "0" || v == "false")) {
      throw Error(ErrorKind::InvalidGrid, "row " + std::to_string(i + 1) + ": bad verify '" + v + "'");
    }
    try {
      s.validate();
    } catch (const Error& e) {
      throw Error(ErrorKind::InvalidGrid, "row " + std::to_string(i + 1) + ": " + e.what());
    }
    grid.push_back(s);
  }
  return grid;
}

// ---------------------------------------------------------------------------
// Markdown: insertion table (rows x n), one search table per radius
// (rows x n) and a total insert + search table for the largest n that ran
// (rows x radius).

namespace detail {

inline std::string cell(const std::optional<double>& v) {
  if (!v) return "";
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << *v;
  return os.str();
}

template <class Key>
void push_unique(std::vector<Key>& keys, const Key& k) {
  if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
}

}  // namespace detail

inline std::string emit_markdown(const std::vector<BenchRecord>& records) {
  if (records.empty()) throw Error(ErrorKind::EmptyInput, "no records to report");

  std::vector<std::string> rows;
  std::vector<std::size_t> sizes;
  std::vector<double> radii;
  for (const BenchRecord& r : records) {
    detail::push_unique(rows, r.spec.tree.label());
    detail::push_unique(sizes, r.spec.n);
    detail::push_unique(radii, r.spec.radius);
  }

  auto lookup = [&](const std::string& row, std::size_t n, std::optional<double> radius,
                    auto&& value) -> std::optional<double> {
    double sum = 0.0;
    std::size_t count = 0;
    for (const BenchRecord& r : records) {
      if (!r.ran || r.spec.tree.label() != row || r.spec.n != n) continue;
      if (radius && r.spec.radius != *radius) continue;
      sum += value(r);
      ++count;
    }
    if (count == 0) return std::nullopt;
    return sum / static_cast<double>(count);
  };

  std::ostringstream out;
  auto table = [&](const std::string& title, const std::vector<std::string>& columns,
                   auto&& value_at) {
    out << "### " << title << "\n\n| Tree(depth, capacity) |";
    for (const auto& c : columns) out << ' ' << c << " |";
    out << "\n|---|";
    for (std::size_t i = 0; i < columns.size(); ++i) out << "---:|";
    out << '\n';
    for (const std::string& row : rows) {
      out << "| " << row << " |";
      for (std::size_t i = 0; i < columns.size(); ++i) {
        out << ' ' << detail::cell(value_at(row, i)) << " |";
      }
      out << '\n';
    }
    out << '\n';
  };

  std::vector<std::string> size_cols;
  for (std::size_t n : sizes) size_cols.push_back(std::to_string(n));

  table("Insertion time, ms", size_cols, [&](const std::string& row, std::size_t i) {
    return lookup(row, sizes[i], std::nullopt, [](const BenchRecord& r) { return r.insert_ms; });
  });
  for (double radius : radii) {
    table("Searching time within distance " + format_double(radius) + ", ms", size_cols,
          [&](const std::string& row, std::size_t i) {
            return lookup(row, sizes[i], radius, [](const BenchRecord& r) { return r.search_ms; });
          });
  }

  std::optional<std::size_t> largest;
  for (const BenchRecord& r : records) {
    if (r.ran && (!largest || r.spec.n > *largest)) largest = r.spec.n;
  }
  if (largest) {
    std::vector<std::string> radius_cols;
    for (double radius : radii) radius_cols.push_back("r = " + format_double(radius));
    table("Total insertion + searching time for " + std::to_string(*largest) + " objects, ms",
          radius_cols, [&](const std::string& row, std::size_t i) {
            return lookup(row, *largest, radii[i],
                          [](const BenchRecord& r) { return r.total_ms(); });
          });
  }
  return out.str();
}

enum class ReportFormat { Csv, Markdown };

inline std::string emit_report(const std::vector<BenchRecord>& records, ReportFormat format) {
  return format == ReportFormat::Csv ? emit_csv(records) : emit_markdown(records);
}

}  // namespace sptree::bench
