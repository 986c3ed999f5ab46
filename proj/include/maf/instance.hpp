#pragma once

#include <optional>
#include <vector>

#include "maf/forest.hpp"

namespace maf {

// The input forests F_1..F_m over one label table.
struct Instance {
  bool rooted = false;
  LabelTablePtr labels;
  std::vector<Forest> forests;

  std::size_t size() const { return forests.size(); }
  // Number of taxa, the root label not counted.
  std::size_t taxa() const;
  // Order of the all-singletons forest, an upper bound on any optimum.
  int max_order() const { return static_cast<int>(labels->base_size()); }
  // Throws unless all forests share rootedness, labels and the full label set.
  void validate() const;
};

// A forest together with, per input forest, the edges whose removal yields it.
struct AgreementForest {
  Forest forest;
  std::vector<EdgeSet> witnesses;

  int order() const { return forest.order(); }
};

// Wraps `candidate` with its witnesses if it is an agreement forest of `inst`.
std::optional<AgreementForest> certify(const Forest& candidate, const Instance& inst);

// Re-checks an agreement forest against every input forest, witnesses
// included.
bool verify(const AgreementForest& af, const Instance& inst);

}  // namespace maf
