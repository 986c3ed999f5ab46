#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "maf/instance.hpp"

namespace maf {

struct GenSpec {
  int n = 10;  // taxa
  int m = 2;   // trees: one original and m-1 perturbed copies
  int x = 1;   // SPR moves per perturbed copy
  // Internal edges contracted in the original; drawn from
  // [0, internal edges / 2] when unset.
  std::optional<int> contract_count;
  std::uint64_t seed = 1;
  bool rooted = true;
};

using Rng = std::mt19937_64;

// Table with the root label and taxa named "1".."n".
LabelTablePtr numbered_labels(int n, bool rooted);

// Rooted binary tree over 1..n: shuffle the taxa, then cut every list of two
// or more at a uniformly chosen position and recurse on both halves.
Forest random_binary_tree(int n, Rng& rng);
Forest random_binary_tree(int n, std::uint64_t seed);

// Contracts `count` uniformly chosen edges joining two unlabelled vertices.
Forest contract_random_edges(const Forest& t, int count, Rng& rng);
Forest contract_random_edges(const Forest& t, int count, std::uint64_t seed);

// Applies x rooted SPR moves. Each prunes a uniformly chosen edge other than
// the root label's edge and regrafts the subtree onto a uniformly chosen edge
// of the rest, again other than the root label's edge.
Forest apply_random_spr(const Forest& t, int x, Rng& rng);
Forest apply_random_spr(const Forest& t, int x, std::uint64_t seed);

// Drops the root label and its orientation. `labels` must hold the same taxa
// without the root label.
Forest unroot(const Forest& t, const LabelTablePtr& labels);

Instance generate_instance(const GenSpec& spec);

// Instance file text: a "# spec" comment line followed by one tree per line.
std::string instance_text(const Instance& inst, const GenSpec& spec);

}  // namespace maf
