// Acceptance run. Prints one PASS/FAIL/WARN/SKIP line per criterion and
// exits non-zero if any criterion fails.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

#include "maf/approx.hpp"
#include "maf/commands.hpp"
#include "maf/datagen.hpp"
#include "maf/fpt.hpp"
#include "maf/newick.hpp"
#include "maf/oracle.hpp"
#include "maf/reduction.hpp"

using namespace maf;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

// Pinned thresholds.
constexpr int kExactnessInstances = 240;   // at least 200
constexpr int kBoundInstances = 60;        // at least 50
constexpr int kReductionInstances = 120;   // at least 100
constexpr double kAmafLimitS = 1.0;
constexpr double kPmafLimitS = 60.0;
constexpr double kSlack = 2.0;  // timing misses within this factor are reported, not failed
constexpr int kPmafMaxOrder = 6;
constexpr int kTable1Orders[] = {5, 8, 10};

int failures = 0;

void report(const char* status, int n, const std::string& name, const std::string& detail) {
  std::cout << status << ' ' << n << ' ' << name << ": " << detail << std::endl;
  if (std::string(status) == "FAIL") ++failures;
}

void verdict(bool ok, int n, const std::string& name, const std::string& detail) {
  report(ok ? "PASS" : "FAIL", n, name, detail);
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

GenSpec corpus_spec(int i) {
  GenSpec g;
  g.seed = 1000 + static_cast<std::uint64_t>(i);
  g.rooted = i % 2 == 0;
  g.n = 4 + (i / 2) % 5;
  g.m = 2 + (i / 10) % 2;
  g.x = (i / 20) % 3;
  return g;
}

struct CorpusEntry {
  Instance inst;
  int opt = 0;
  int fpt = -1;
  int approx = -1;
  std::uint64_t leaves = 0;
  bool certificates_ok = true;
};

std::string temp_file(const std::string& name, const std::string& text) {
  fs::path dir = fs::temp_directory_path() / ("maf_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  fs::path p = dir / name;
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

int main() {
  // ---- corpus shared by criteria 1-3 ----
  std::vector<CorpusEntry> corpus;
  for (int i = 0; i < kExactnessInstances; ++i) {
    CorpusEntry c;
    c.inst = generate_instance(corpus_spec(i));
    c.opt = brute_force_maf(c.inst).opt_order;
    if (auto mk = find_min_k(c.inst, 1, c.inst.max_order())) {
      c.fpt = mk->order;
      c.leaves = mk->stats.leaves;
      c.certificates_ok &= verify(mk->forest, c.inst);
    }
    auto ap = approx(c.inst);
    c.approx = ap.forest.order();
    c.certificates_ok &= verify(ap.forest, c.inst);
    corpus.push_back(std::move(c));
  }

  {
    int agree = 0, rooted = 0;
    for (const auto& c : corpus) {
      agree += c.fpt == c.opt;
      rooted += c.inst.rooted;
    }
    verdict(agree == kExactnessInstances, 1, "oracle exactness",
            std::to_string(agree) + "/" + std::to_string(kExactnessInstances) + " agree (" + std::to_string(rooted) +
                " rooted, " + std::to_string(kExactnessInstances - rooted) + " unrooted)");
  }
  {
    int violations = 0;
    double worst[2] = {0, 0};
    for (const auto& c : corpus) {
      int r = c.inst.rooted ? 3 : 4;
      if (c.approx > r * c.opt) ++violations;
      worst[c.inst.rooted] = std::max(worst[c.inst.rooted], static_cast<double>(c.approx) / c.opt);
    }
    verdict(violations == 0, 2, "approximation ratio",
            std::to_string(violations) + " violations; worst rooted " + fmt(worst[1]) + " (<= 3), worst unrooted " +
                fmt(worst[0]) + " (<= 4)");
  }
  {
    int violations = 0;
    for (const auto& c : corpus)
      if (c.fpt < 0 || c.leaves > leaf_bound(c.inst.rooted, c.fpt)) ++violations;
    verdict(violations == 0, 3, "search-tree leaves",
            std::to_string(violations) + " instances over 3^k / 4^k at the returned k");
  }

  // ---- 4: generation bound ----
  {
    int violations = 0, worst_gap = -1000;
    for (int i = 0; i < kBoundInstances; ++i) {
      GenSpec g;
      g.seed = 5000 + static_cast<std::uint64_t>(i);
      g.n = 6 + i % 3;
      g.m = 2 + i % 2;
      g.x = (i / 2) % 3;
      int opt = brute_force_maf(generate_instance(g)).opt_order;
      int bound = g.x * (g.m - 1) + 1;
      if (opt > bound) ++violations;
      worst_gap = std::max(worst_gap, opt - bound);
    }
    verdict(violations == 0, 4, "generation bound",
            std::to_string(violations) + "/" + std::to_string(kBoundInstances) +
                " rooted instances above x(m-1)+1; max opt-bound " + std::to_string(worst_gap));
  }

  // ---- 5: reduction preserves the optimum ----
  {
    int violations = 0, reduced = 0;
    for (int i = 0; i < kReductionInstances; ++i) {
      GenSpec g = corpus_spec(i + 7);
      g.seed += 90000;
      Instance inst = generate_instance(g);
      // Cut part of F1 on odd instances so the rule has work to do.
      if (i % 2) {
        Rng rng(g.seed);
        EdgeSet cut;
        for (EdgeId e = 0; e < static_cast<EdgeId>(inst.forests[0].edge_count()); ++e)
          if (rng() % 4 == 0) cut.push_back(e);
        inst.forests[0] = remove_edges(inst.forests[0], cut);
      }
      auto [out, trace] = reduce_instance(inst);
      reduced += !trace.removals.empty();
      if (brute_force_maf(inst).opt_order != brute_force_maf(out).opt_order) ++violations;
    }
    verdict(violations == 0, 5, "reduction preserves optimum",
            std::to_string(violations) + "/" + std::to_string(kReductionInstances) + " changed (" +
                std::to_string(reduced) + " instances had removals)");
  }

  // ---- 6: throughput ----
  {
    std::ostringstream sink, errs;
    double amaf_worst = 0;
    for (std::uint64_t s = 1; s <= 5; ++s) {
      GenSpec g;
      g.n = 50;
      g.m = 5;
      g.x = 2;
      g.seed = s;
      SolveOptions o;
      o.input = temp_file("t50-5-" + std::to_string(s) + ".nwk", instance_text(generate_instance(g), g));
      auto t0 = Clock::now();
      int code = cmd_amaf(o, sink, errs);
      double t = seconds_since(t0);
      if (code != kExitOk) t = 1e9;
      amaf_worst = std::max(amaf_worst, t);
    }
    double pmaf_worst = 0;
    int pmaf_count = 0;
    for (std::uint64_t s = 1; pmaf_count < 5 && s <= 40; ++s) {
      GenSpec g;
      g.n = 40;
      g.m = 2;
      g.x = 2 + static_cast<int>(s % 4);
      g.seed = s;
      Instance inst = generate_instance(g);
      SolveOptions o;
      o.input = temp_file("t40-2-" + std::to_string(s) + ".nwk", instance_text(inst, g));
      o.k_cap = kPmafMaxOrder;
      std::ostringstream out;
      auto t0 = Clock::now();
      int code = cmd_pmaf(o, out, errs);
      double t = seconds_since(t0);
      if (code == kExitNoSolution) continue;  // true order above 6, outside this check
      if (code != kExitOk) t = 1e9;
      pmaf_worst = std::max(pmaf_worst, t);
      ++pmaf_count;
    }
    std::string detail = "amaf t50-5 worst " + fmt(amaf_worst) + " s (limit " + fmt(kAmafLimitS, 0) +
                         "), pmaf t40-2 order<=6 worst " + fmt(pmaf_worst) + " s over " + std::to_string(pmaf_count) +
                         " instances (limit " + fmt(kPmafLimitS, 0) + ")";
    bool within = amaf_worst < kAmafLimitS && pmaf_worst < kPmafLimitS && pmaf_count > 0;
    bool slack = amaf_worst < kSlack * kAmafLimitS && pmaf_worst < kSlack * kPmafLimitS && pmaf_count > 0;
    report(within ? "PASS" : slack ? "WARN" : "FAIL", 6, "throughput", detail);
  }

  // ---- 7: optional real-data check ----
  if (const char* dir = std::getenv("MAF_TABLE1_DIR")) {
    std::vector<std::string> got;
    bool ok = true;
    for (int i = 0; i < 3; ++i) {
      SolveOptions o;
      o.input = (fs::path(dir) / ("set" + std::to_string(i + 1) + ".nwk")).string();
      std::ostringstream out, errs;
      int code = cmd_pmaf(o, out, errs);
      std::string text = out.str();
      int order = code == kExitOk ? std::stoi(text.substr(text.find(' ') + 1)) : -1;
      got.push_back(std::to_string(order));
      ok &= order == kTable1Orders[i];
    }
    verdict(ok, 7, "real-data orders", "got " + got[0] + ", " + got[1] + ", " + got[2] + "; expected 5, 8, 10");
  } else {
    report("SKIP", 7, "real-data orders", "set MAF_TABLE1_DIR to a directory holding set1.nwk..set3.nwk");
  }

  // ---- 8: property suites ----
  {
    int checks = 0, bad = 0;
    for (std::uint64_t s = 1; s <= 100; ++s) {
      GenSpec g;
      g.seed = 20000 + s;
      g.n = 3 + static_cast<int>(s % 20);
      g.m = 2;
      g.x = static_cast<int>(s % 4);
      g.rooted = s % 2;
      Instance inst = generate_instance(g);
      std::string text;
      for (const auto& f : inst.forests) text += serialize(f);
      Instance back = parse_instance(text, g.rooted);
      for (std::size_t i = 0; i < inst.size(); ++i) {
        ++checks;
        bad += !structurally_equal(back.forests[i], inst.forests[i]) ||
               serialize(back.forests[i]) != serialize(inst.forests[i]);
        // Contraction is idempotent, also after cutting edges.
        Rng rng(s + i);
        EdgeSet cut;
        for (EdgeId e = 0; e < static_cast<EdgeId>(inst.forests[i].edge_count()); ++e)
          if (rng() % 3 == 0) cut.push_back(e);
        Forest f = remove_edges(inst.forests[i], cut);
        ++checks;
        bad += !f.irreducible() || force_contract(f).canonical() != f.canonical();
      }
    }
    for (const auto& c : corpus) {
      ++checks;
      bad += !c.certificates_ok;
    }
    // The command line re-verifies its own certificates.
    for (int i = 0; i < 10; ++i) {
      GenSpec g = corpus_spec(i * 17);
      SolveOptions o;
      o.rooted = g.rooted;
      o.verify = true;
      o.input = temp_file("verify-" + std::to_string(i) + ".nwk", instance_text(generate_instance(g), g));
      std::ostringstream out, errs;
      checks += 2;
      bad += cmd_pmaf(o, out, errs) != kExitOk;
      bad += cmd_amaf(o, out, errs) != kExitOk;
    }
    verdict(bad == 0, 8, "round-trip and validity",
            std::to_string(checks - bad) + "/" + std::to_string(checks) + " property checks hold");
  }

  fs::remove_all(fs::temp_directory_path() / ("maf_acceptance_" + std::to_string(::getpid())));
  return failures == 0 ? 0 : 1;
}
