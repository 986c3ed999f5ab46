#pragma once

#include <cstdint>

#include "maf/instance.hpp"

namespace maf {

struct OracleResult {
  int opt_order = 0;
  AgreementForest witness;
  std::uint64_t subsets_examined = 0;
};

// Exact maximum agreement forest by enumerating edge subsets of F_1 by size,
// then lexicographically. Only subsets whose every edge splits a component
// are tested, so the first agreement forest met is optimal. Throws when F_1
// has more than max_edges edges.
OracleResult brute_force_maf(const Instance& inst, std::size_t max_edges = 18);

}  // namespace maf
