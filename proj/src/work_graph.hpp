#pragma once

// Mutable scratch representation used to implement the Forest operations.

#include <vector>

#include "maf/forest.hpp"

namespace maf::detail {

struct WorkGraph {
  bool rooted = false;
  LabelTablePtr labels;
  std::vector<LabelId> label;
  std::vector<VertexId> parent;
  std::vector<std::vector<VertexId>> nbrs;
  std::vector<char> alive;

  WorkGraph(bool rooted, LabelTablePtr labels) : rooted(rooted), labels(std::move(labels)) {}
  // Copy of f, leaving out the edges flagged in `drop` (indexed by EdgeId).
  static WorkGraph from(const Forest& f, const std::vector<char>* drop = nullptr);

  VertexId add_vertex(LabelId l = kNone);
  void add_edge(VertexId u, VertexId v);
  void remove_edge(VertexId u, VertexId v);
  void remove_vertex(VertexId v);
  std::vector<VertexId> children(VertexId v) const;

  void contract();
  Forest to_forest() const;
};

// Builds a forest from flat arrays. Edges are (parent, child) when rooted.
Forest make_forest(bool rooted, LabelTablePtr labels, std::vector<LabelId> vertex_labels,
                   const std::vector<Forest::Edge>& edges);

}  // namespace maf::detail
