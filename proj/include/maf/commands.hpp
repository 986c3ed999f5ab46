#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "maf/datagen.hpp"
#include "maf/instance.hpp"

namespace maf {

enum ExitCode { kExitOk = 0, kExitNoSolution = 1, kExitInput = 2, kExitInternal = 3 };

struct SolveOptions {
  std::string input;
  bool rooted = true;
  std::optional<int> k_cap;
  bool verify = false;
  std::string out;  // certificate file, optional
  int jobs = 1;
};

int cmd_pmaf(const SolveOptions& opts, std::ostream& out, std::ostream& err);
int cmd_amaf(const SolveOptions& opts, std::ostream& out, std::ostream& err);
// Writes the instance to `path`, or to `out` when path is empty.
int cmd_gen(const GenSpec& spec, const std::string& path, std::ostream& out, std::ostream& err);

struct BenchOptions {
  std::string directory;
  std::string mode = "all";  // fpt, approx, oracle or all
  bool rooted = true;        // unless the file's spec comment says otherwise
  int jobs = 1;
  std::size_t max_edges = 18;
  std::string out;  // CSV file, optional
};

struct BenchRow {
  std::string instance;
  int n = 0;
  int m = 0;
  bool rooted = true;
  std::string method;
  std::string order;  // integer, or a mean for aggregate rows
  std::string ratio;
  std::string wall_ms;
  std::string nodes;
  std::string leaves;
  std::string status;
};

const std::vector<std::string>& bench_columns();
std::string csv_line(const std::vector<std::string>& fields);
std::vector<BenchRow> run_bench(const BenchOptions& opts, bool* mismatch = nullptr);
int cmd_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err);

// Entry point of the `maf` tool.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace maf
