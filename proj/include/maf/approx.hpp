#pragma once

#include <string>
#include <utility>
#include <vector>

#include "maf/instance.hpp"

namespace maf {

enum class MetaStepKind { Rule1, Group, MS2, MS3_1, MS3_2 };

const char* to_string(MetaStepKind k);

struct MetaStepRecord {
  MetaStepKind kind = MetaStepKind::Rule1;
  int pair = 0;  // index i of the forest F_1 was being matched with
  // Removed edges as (forest, edge id before the step); forest 0 is F_1,
  // forest 1 is F_i.
  std::vector<std::pair<int, EdgeId>> removed;
  EdgeSet f1_edges;   // the part of `removed` in F_1
  EdgeSet essential;  // subset of f1_edges with the same effect, each edge splitting a component
  int declared_ratio = 1;
};

struct ApproxResult {
  AgreementForest forest;
  std::vector<MetaStepRecord> trace;
  int ratio_bound = 1;
  // F_1 just before each trace record, kept when asked for.
  std::vector<Forest> snapshots;
};

struct ApproxOptions {
  bool keep_snapshots = false;
};

ApproxResult approx_rmaf(const Instance& inst, const ApproxOptions& opts = {});
ApproxResult approx_umaf(const Instance& inst, const ApproxOptions& opts = {});
ApproxResult approx(const Instance& inst, const ApproxOptions& opts = {});

// The ratio a record may claim for its kind.
int kind_ratio(MetaStepKind kind, bool rooted);

// Audits one record against the F_1 it was applied to.
bool check_metastep_ratio(const MetaStepRecord& rec, const Forest& before);

// Greedily drops edges of `edges` (in id order) that do not change the
// result of removing them from f.
EdgeSet essential_subset(const Forest& f, const EdgeSet& edges);

}  // namespace maf
