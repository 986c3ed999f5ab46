#include "maf/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <thread>

#include "maf/approx.hpp"
#include "maf/fpt.hpp"
#include "maf/newick.hpp"
#include "maf/oracle.hpp"

namespace maf {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string fixed(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Reads and parses an instance, reporting problems the way every command
// does. Returns nullopt after printing the error.
std::optional<Instance> load(const std::string& path, bool rooted, std::ostream& err) {
  try {
    std::vector<std::string> warnings;
    Instance inst = parse_instance(read_text_file(path), rooted, &warnings);
    for (const auto& w : warnings) err << "warning: " << w << '\n';
    return inst;
  } catch (const Error& e) {
    err << "error: " << path << ": " << e.what() << '\n';
    return std::nullopt;
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  f << text;
}

void print_stats(std::ostream& out, const SearchStats& s) {
  out << "nodes: " << s.nodes << '\n'
      << "leaves: " << s.leaves << '\n'
      << "max_depth: " << s.max_depth << '\n'
      << "groupings: " << s.groupings << '\n'
      << "case2: " << s.case2 << '\n'
      << "case3_1: " << s.case3_1 << '\n'
      << "case3_2: " << s.case3_2 << '\n';
}

// Exact order with the lower bound taken from the approximation.
struct Exact {
  std::optional<MinKResult> result;
  int approx_order = 0;
  int k_start = 1;
  double wall_ms = 0;
};

Exact solve_exact(const Instance& inst, std::optional<int> cap, int jobs) {
  Exact ex;
  auto t0 = Clock::now();
  ex.approx_order = approx(inst).forest.order();
  int r = inst.rooted ? 3 : 4;
  ex.k_start = std::max(1, ex.approx_order / r);
  int k_hi = inst.max_order();
  if (cap) k_hi = std::min(k_hi, *cap);
  ex.result = find_min_k(inst, ex.k_start, k_hi, jobs);
  ex.wall_ms = ms_since(t0);
  return ex;
}

}  // namespace

int cmd_pmaf(const SolveOptions& opts, std::ostream& out, std::ostream& err) {
  auto inst = load(opts.input, opts.rooted, err);
  if (!inst) return kExitInput;
  try {
    Exact ex = solve_exact(*inst, opts.k_cap, opts.jobs);
    if (!ex.result) {
      if (opts.k_cap) {
        out << "order: none <= " << *opts.k_cap << '\n';
        return kExitNoSolution;
      }
      err << "error: search failed below the all-singletons order\n";
      return kExitInternal;
    }
    const MinKResult& r = *ex.result;
    out << "order: " << r.order << '\n' << "certificate:\n" << serialize(r.forest.forest);
    out << "approx_order: " << ex.approx_order << '\n'
        << "k_start: " << ex.k_start << '\n'
        << "k_tried: " << r.k_tried << '\n';
    print_stats(out, r.stats);
    out << "leaf_bound: " << leaf_bound(inst->rooted, r.order) << '\n';
    out << "wall_ms: " << fixed(ex.wall_ms) << '\n';
    if (!opts.out.empty()) write_file(opts.out, serialize(r.forest.forest));
    if (opts.verify) {
      bool ok = verify(r.forest, *inst) && r.stats.leaves <= leaf_bound(inst->rooted, r.order);
      out << "verified: " << (ok ? "yes" : "no") << '\n';
      if (!ok) return kExitInternal;
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

int cmd_amaf(const SolveOptions& opts, std::ostream& out, std::ostream& err) {
  auto inst = load(opts.input, opts.rooted, err);
  if (!inst) return kExitInput;
  try {
    auto t0 = Clock::now();
    ApproxResult res = approx(*inst, ApproxOptions{opts.verify});
    double wall = ms_since(t0);
    std::map<MetaStepKind, int> counts;
    for (const auto& rec : res.trace) ++counts[rec.kind];
    out << "order: " << res.forest.order() << '\n' << "certificate:\n" << serialize(res.forest.forest);
    out << "steps:";
    for (auto k : {MetaStepKind::Rule1, MetaStepKind::Group, MetaStepKind::MS2, MetaStepKind::MS3_1,
                   MetaStepKind::MS3_2})
      out << ' ' << to_string(k) << '=' << counts[k];
    out << '\n' << "ratio_bound: " << res.ratio_bound << '\n' << "wall_ms: " << fixed(wall) << '\n';
    if (!opts.out.empty()) write_file(opts.out, serialize(res.forest.forest));
    if (opts.verify) {
      bool ok = verify(res.forest, *inst);
      for (std::size_t i = 0; i < res.trace.size() && ok; ++i) ok = check_metastep_ratio(res.trace[i], res.snapshots[i]);
      out << "verified: " << (ok ? "yes" : "no") << '\n';
      if (!ok) return kExitInternal;
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

int cmd_gen(const GenSpec& spec, const std::string& path, std::ostream& out, std::ostream& err) {
  try {
    std::string text = instance_text(generate_instance(spec), spec);
    if (path.empty()) out << text;
    else write_file(path, text);
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

// ---- bench ----

const std::vector<std::string>& bench_columns() {
  static const std::vector<std::string> cols{"instance", "n",       "m",     "rooted", "method", "order",
                                             "ratio",    "wall_ms", "nodes", "leaves", "status"};
  return cols;
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\r\n") == std::string::npos) {
      line += f;
      continue;
    }
    line += '"';
    for (char c : f) {
      if (c == '"') line += '"';
      line += c;
    }
    line += '"';
  }
  line += "\r\n";
  return line;
}

namespace {

struct FileOutcome {
  std::vector<BenchRow> rows;
  int n = 0, m = 0;
  bool parsed = false;
  std::optional<int> exact;
  std::optional<int> approx_order;
  bool mismatch = false;
};

FileOutcome bench_file(const std::filesystem::path& path, const BenchOptions& opts) {
  FileOutcome fo;
  std::string name = path.filename().string();
  BenchRow base;
  base.instance = name;
  Instance inst;
  try {
    std::string text = read_text_file(path.string());
    auto meta = spec_comment(text);
    bool rooted = opts.rooted;
    if (auto it = meta.find("rooted"); it != meta.end()) rooted = it->second != "0";
    inst = parse_instance(text, rooted);
  } catch (const std::exception& e) {
    base.method = "none";
    base.status = std::string("skipped: ") + e.what();
    fo.rows.push_back(base);
    return fo;
  }
  fo.parsed = true;
  fo.n = static_cast<int>(inst.taxa());
  fo.m = static_cast<int>(inst.size());
  base.n = fo.n;
  base.m = fo.m;
  base.rooted = inst.rooted;
  bool all = opts.mode == "all";

  std::optional<BenchRow> approx_row, fpt_row, oracle_row;
  if (all || opts.mode == "approx") {
    BenchRow r = base;
    r.method = "approx";
    auto t0 = Clock::now();
    auto res = approx(inst);
    r.wall_ms = fixed(ms_since(t0));
    fo.approx_order = res.forest.order();
    r.order = std::to_string(*fo.approx_order);
    r.status = "ok";
    approx_row = r;
  }
  if (all || opts.mode == "fpt") {
    BenchRow r = base;
    r.method = "fpt";
    Exact ex = solve_exact(inst, std::nullopt, 1);
    r.wall_ms = fixed(ex.wall_ms);
    if (ex.result) {
      r.order = std::to_string(ex.result->order);
      r.nodes = std::to_string(ex.result->stats.nodes);
      r.leaves = std::to_string(ex.result->stats.leaves);
      r.status = verify(ex.result->forest, inst) ? "ok" : "invalid certificate";
      fo.exact = ex.result->order;
    } else {
      r.status = "failed";
    }
    fpt_row = r;
  }
  if (all || opts.mode == "oracle") {
    BenchRow r = base;
    r.method = "oracle";
    if (inst.forests[0].edge_count() > opts.max_edges) {
      r.status = "skipped: too large";
    } else {
      auto t0 = Clock::now();
      auto res = brute_force_maf(inst, opts.max_edges);
      r.wall_ms = fixed(ms_since(t0));
      r.order = std::to_string(res.opt_order);
      r.nodes = std::to_string(res.subsets_examined);
      r.status = "ok";
      if (fo.exact && *fo.exact != res.opt_order) {
        fo.mismatch = true;
        r.status = "mismatch";
        fpt_row->status = "mismatch";
      }
      fo.exact = res.opt_order;
    }
    oracle_row = r;
  }
  if (approx_row && fo.exact) approx_row->ratio = fixed(static_cast<double>(*fo.approx_order) / *fo.exact);
  for (auto* r : {&approx_row, &fpt_row, &oracle_row})
    if (*r) fo.rows.push_back(**r);
  return fo;
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchOptions& opts, bool* mismatch) {
  namespace fs = std::filesystem;
  if (opts.mode != "all" && opts.mode != "fpt" && opts.mode != "approx" && opts.mode != "oracle")
    throw Error("unknown bench mode '" + opts.mode + "'");
  if (!fs::is_directory(opts.directory)) throw Error("not a directory: " + opts.directory);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(opts.directory)) {
    std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && !name.empty() && name[0] != '.') files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });

  std::vector<FileOutcome> outcomes(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < files.size();) outcomes[i] = bench_file(files[i], opts);
  };
  int threads = std::max(1, std::min<int>(opts.jobs, static_cast<int>(files.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<BenchRow> rows;
  struct Agg {
    double order_sum = 0;
    int count = 0;
    std::optional<double> worst;
  };
  std::map<std::pair<int, int>, Agg> groups;
  bool any_mismatch = false;
  for (const auto& fo : outcomes) {
    rows.insert(rows.end(), fo.rows.begin(), fo.rows.end());
    any_mismatch |= fo.mismatch;
    if (!fo.parsed) continue;
    Agg& g = groups[{fo.n, fo.m}];
    std::optional<int> best = fo.exact ? fo.exact : fo.approx_order;
    if (best) {
      g.order_sum += *best;
      ++g.count;
    }
    if (fo.exact && fo.approx_order) {
      double r = static_cast<double>(*fo.approx_order) / *fo.exact;
      g.worst = g.worst ? std::max(*g.worst, r) : r;
    }
  }
  for (const auto& [key, g] : groups) {
    BenchRow r;
    r.instance = "t" + std::to_string(key.first) + "-" + std::to_string(key.second);
    r.n = key.first;
    r.m = key.second;
    r.method = "aggregate";
    if (g.count) r.order = fixed(g.order_sum / g.count);
    if (g.worst) r.ratio = fixed(*g.worst);
    r.status = "instances=" + std::to_string(g.count);
    rows.push_back(r);
  }
  if (mismatch) *mismatch = any_mismatch;
  return rows;
}

int cmd_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    bool mismatch = false;
    auto rows = run_bench(opts, &mismatch);
    std::string csv = csv_line(bench_columns());
    for (const auto& r : rows) {
      bool has_n = r.method != "none";
      csv += csv_line({r.instance, has_n ? std::to_string(r.n) : "", has_n ? std::to_string(r.m) : "",
                       has_n && r.method != "aggregate" ? (r.rooted ? "1" : "0") : "", r.method, r.order, r.ratio,
                       r.wall_ms, r.nodes, r.leaves, r.status});
    }
    if (opts.out.empty()) out << csv;
    else write_file(opts.out, csv);
    for (const auto& r : rows)
      if (r.status.rfind("skipped", 0) == 0 && r.method == "none") err << "warning: " << r.instance << ": " << r.status << '\n';
    if (mismatch) {
      err << "error: exact solver and brute force disagree\n";
      return kExitInternal;
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

// ---- command line ----

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Maximum agreement forests of rooted or unrooted multifurcating trees"};
  app.name("maf");
  app.require_subcommand(1);

  SolveOptions so;
  bool unrooted = false;
  auto add_rooting = [&](CLI::App* sub) {
    auto* r = sub->add_flag("--rooted", "Trees are rooted (default)");
    auto* u = sub->add_flag("--unrooted", unrooted, "Trees are unrooted");
    r->excludes(u);
  };
  auto add_solve = [&](CLI::App* sub) {
    sub->add_option("input", so.input, "Instance file, one Newick tree per line")->required();
    add_rooting(sub);
    sub->add_flag("--verify", so.verify, "Re-check the certificate against every input tree");
    sub->add_option("--out", so.out, "Also write the certificate to this file");
  };

  auto* pmaf = app.add_subcommand("pmaf", "Exact maximum agreement forest");
  add_solve(pmaf);
  int k_cap = 0;
  auto* k_opt = pmaf->add_option("--k", k_cap, "Give up above this order (exit 1)")->check(CLI::PositiveNumber);
  pmaf->add_option("--jobs", so.jobs, "Worker threads for the search")->check(CLI::PositiveNumber);

  auto* amaf = app.add_subcommand("amaf", "Approximate maximum agreement forest (ratio 3 rooted, 4 unrooted)");
  add_solve(amaf);

  GenSpec spec;
  std::string gen_out;
  int contract = -1;
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("-n", spec.n, "Number of taxa")->required();
  gen->add_option("-m", spec.m, "Number of trees")->required();
  gen->add_option("-x", spec.x, "SPR moves per perturbed tree")->required();
  gen->add_option("--seed", spec.seed, "Random seed")->envname("MAF_SEED");
  gen->add_option("--contract", contract, "Internal edges to contract (random when omitted)");
  gen->add_option("--out", gen_out, "Output file (stdout when omitted)");
  add_rooting(gen);

  BenchOptions bo;
  auto* bench = app.add_subcommand("bench", "Run the solvers over a directory of instances, CSV out");
  bench->add_option("directory", bo.directory)->required();
  bench->add_option("--mode", bo.mode, "fpt, approx, oracle or all")
      ->check(CLI::IsMember({"fpt", "approx", "oracle", "all"}));
  bench->add_option("--jobs", bo.jobs, "Instances solved concurrently")->check(CLI::PositiveNumber);
  bench->add_option("--max-edges", bo.max_edges, "Largest first tree the brute force accepts");
  bench->add_option("--out", bo.out, "CSV file (stdout when omitted)");
  add_rooting(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  if (*pmaf || *amaf) {
    so.rooted = !unrooted;
    if (*k_opt) so.k_cap = k_cap;
    return *pmaf ? cmd_pmaf(so, out, err) : cmd_amaf(so, out, err);
  }
  if (*gen) {
    spec.rooted = !unrooted;
    if (contract >= 0) spec.contract_count = contract;
    return cmd_gen(spec, gen_out, out, err);
  }
  bo.rooted = !unrooted;
  return cmd_bench(bo, out, err);
}

}  // namespace maf
