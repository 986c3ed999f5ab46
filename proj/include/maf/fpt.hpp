#pragma once

#include <cstdint>
#include <optional>

#include "maf/instance.hpp"

namespace maf {

struct SolveRequest {
  const Instance& instance;
  int k = 1;
  // Worker threads used for the first levels of the search tree.
  int jobs = 1;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;
  int max_depth = 0;
  std::uint64_t groupings = 0;   // Case 1
  std::uint64_t case2 = 0;
  std::uint64_t case3_1 = 0;
  std::uint64_t case3_2 = 0;
  // Nodes whose depth exceeded the growth of Ord(F_1) along their path.
  // Always zero unless a branch failed to split F_1.
  std::uint64_t depth_violations = 0;

  SearchStats& operator+=(const SearchStats& o);
};

struct SolveResult {
  std::optional<AgreementForest> forest;
  SearchStats stats;
};

// Agreement forest of order at most k, if one exists.
SolveResult solve_rmaf(const SolveRequest& req);
SolveResult solve_umaf(const SolveRequest& req);
SolveResult solve(const SolveRequest& req);

// The maximal agreement forest of a strongly reducible pair when F2 has no
// maximal sibling set. Throws if F2 has one.
Forest unique_maximal_af(const Forest& f1, const Forest& f2);

struct MinKResult {
  int order = 0;
  AgreementForest forest;
  SearchStats stats;  // of the final, successful k
  SearchStats total;  // over all k tried
  int k_tried = 0;
};

// Smallest k in [k_lo, k_hi] admitting an agreement forest, searched upwards.
std::optional<MinKResult> find_min_k(const Instance& inst, int k_lo, int k_hi, int jobs = 1);

// Number of leaves the search tree at parameter k may have: 3^k rooted, 4^k
// unrooted (saturating).
std::uint64_t leaf_bound(bool rooted, int k);

}  // namespace maf
