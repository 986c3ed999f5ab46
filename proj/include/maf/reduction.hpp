#pragma once

#include <utility>
#include <vector>

#include "maf/instance.hpp"

namespace maf {

struct Removal {
  int target = 0;   // index of the forest the edge was removed from
  EdgeId edge = kNone;  // id in that forest just before the removal round
  int witness = 0;  // index of the forest whose components justified it
  std::vector<LabelSet> witness_components;  // components covering side1
};

struct ReductionTrace {
  std::vector<Removal> removals;
};

// Edges of `target` that no component of `witness` crosses: removing any of
// them keeps every agreement forest of the pair. Ascending ids.
EdgeSet removable_edges(const Forest& target, const Forest& witness);

// Applies the rule between two forests until neither has a removable edge.
// Forest indices in the trace are 0 for fp and 1 for fq.
struct PairReduction {
  Forest p, q;
  ReductionTrace trace;
};
PairReduction reduce_pair(const Forest& fp, const Forest& fq, bool with_trace = true);

// Same over every ordered pair of forests, in index order, to a fixpoint.
std::pair<Instance, ReductionTrace> reduce_instance(const Instance& inst);

// True if no pair of forests admits a removal.
bool strongly_reducible(const std::vector<Forest>& forests);

}  // namespace maf
