#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "maf/labels.hpp"

namespace maf {

// A rooted or unrooted X-forest. Immutable once built; every operation below
// returns a new value. Vertex and edge ids are dense and only meaningful
// within one value.
//
// Rooted forests keep the parent of every vertex. In the component holding
// the root label, that label is the top vertex and has at most one child.
class Forest {
 public:
  struct Vertex {
    LabelId label = kNone;
    VertexId parent = kNone;  // rooted only
    std::vector<EdgeId> edges;
  };
  // In rooted forests u is the parent of v.
  struct Edge {
    VertexId u = kNone;
    VertexId v = kNone;
  };

  Forest() = default;

  bool rooted() const { return rooted_; }
  const LabelTable& labels() const { return *labels_; }
  const LabelTablePtr& label_table() const { return labels_; }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const Vertex& vertex(VertexId v) const { return vertices_.at(v); }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }

  VertexId other_end(EdgeId e, VertexId v) const {
    const Edge& ed = edges_.at(e);
    return ed.u == v ? ed.v : ed.u;
  }
  std::size_t degree(VertexId v) const { return vertices_.at(v).edges.size(); }
  bool is_leaf(VertexId v) const { return vertices_.at(v).label != kNone && degree(v) <= 1; }

  // Children of v (rooted), or all neighbours (unrooted).
  std::vector<VertexId> children(VertexId v) const;
  std::vector<VertexId> neighbors(VertexId v) const;
  // Edge to the parent of v, kNone for a component top.
  EdgeId parent_edge(VertexId v) const;

  // Vertex carrying a label, kNone if the label does not occur.
  VertexId vertex_of(LabelId l) const {
    return l >= 0 && static_cast<std::size_t>(l) < vertex_of_label_.size() ? vertex_of_label_[l] : kNone;
  }
  bool has_label(LabelId l) const { return vertex_of(l) != kNone; }
  // Labels present in this forest, ascending.
  std::vector<LabelId> present_labels() const;

  int order() const { return static_cast<int>(component_labels_.size()); }
  int component_of(VertexId v) const { return component_.at(v); }
  int component_of_label(LabelId l) const { return component_.at(vertex_of(l)); }
  // Label sets of the components, each ascending; components are numbered in
  // order of their smallest vertex id.
  const std::vector<std::vector<LabelId>>& component_labels() const { return component_labels_; }
  // Top vertex of a component (rooted), or some vertex of it (unrooted).
  VertexId component_root(int c) const { return component_root_.at(c); }
  bool connected(LabelId a, LabelId b) const { return component_of_label(a) == component_of_label(b); }

  // Canonical text of the forest in terms of label ids. Two forests over
  // equal label tables are structurally equal iff their canonical forms are.
  std::string canonical() const;

  // True if no forced contraction step applies.
  bool irreducible() const;

  bool has_grouped_labels() const;

 private:
  friend class ForestBuilder;
  void finish();

  bool rooted_ = false;
  LabelTablePtr labels_;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<VertexId> vertex_of_label_;
  std::vector<int> component_;
  std::vector<std::vector<LabelId>> component_labels_;
  std::vector<VertexId> component_root_;
};

bool structurally_equal(const Forest& a, const Forest& b);

// Assembles a forest from vertices and edges.
class ForestBuilder {
 public:
  ForestBuilder(bool rooted, LabelTablePtr labels);

  VertexId add_vertex(LabelId label = kNone);
  // Rooted: u becomes the parent of v.
  EdgeId add_edge(VertexId u, VertexId v);
  void set_label(VertexId v, LabelId label);
  std::size_t vertex_count() const { return labels_of_.size(); }

  // Forced contraction applied.
  Forest build() const;
  // Exactly as assembled; still checked for being a forest with unique labels.
  Forest build_raw() const;

 private:
  bool rooted_;
  LabelTablePtr labels_;
  std::vector<LabelId> labels_of_;
  std::vector<Forest::Edge> edges_;
};

using EdgeSet = std::vector<EdgeId>;
using LabelSet = std::vector<LabelId>;

// side1 is the labelled leaf when the edge hangs one, otherwise the side
// below the edge (rooted) or the side of Edge::v (unrooted).
struct EdgeSplit {
  EdgeId edge = kNone;
  LabelSet side1;
  LabelSet side2;
};

struct SiblingSet {
  LabelSet labels;  // ascending by key
  VertexId hub = kNone;
  EdgeSet surplus_edges;
};

int order(const Forest& f);

// Suppresses unlabeled degree-2 vertices (except a rooted component top) and
// deletes unlabeled vertices of degree below 2, until nothing changes.
Forest force_contract(const Forest& f);

// Removes the given edges and contracts. Throws on an unknown edge id.
Forest remove_edges(const Forest& f, std::span<const EdgeId> edges);

EdgeSplit split_labels(const Forest& f, EdgeId e);

// Whether `sub` can be obtained from `f` by deleting edges and contracting.
// Grouped labels of either side are expanded first. Throws when the two do
// not cover the same original labels.
bool is_subforest(const Forest& sub, const Forest& f);

// Edges of `f` whose removal turns `f` into `sub`, when `sub` is a
// subforest. Both must be free of grouped labels.
std::optional<EdgeSet> embedding_complement(const Forest& sub, const Forest& f);

// The maximal sibling set with the smallest label key, if any.
std::optional<SiblingSet> find_mss(const Forest& f);
// All maximal sibling sets ordered by smallest label key.
std::vector<SiblingSet> all_mss(const Forest& f);
// `labels` viewed as a maximal sibling set of f: a single-edge tree, or
// siblings whose hub has degree at most |labels| (rooted, not counting the
// parent edge) or |labels|+1 (unrooted). The unrooted hub's spare neighbour
// may be a leaf, so this is looser than what all_mss reports.
std::optional<SiblingSet> mss_of(const Forest& f, const LabelSet& labels);
// Common parent (rooted) or common neighbour (unrooted) of all `labels`
// together with the hub edges not leading to them. The set need not be
// maximal. None when they are not siblings.
std::optional<SiblingSet> siblings_of(const Forest& f, const LabelSet& labels);

// Replaces an MSS by a single grouped label. Throws if S is not an MSS of f.
Forest group_labels(const Forest& f, const SiblingSet& s);

// Undoes all grouping; the result uses the table of original labels.
Forest expand_labels(const Forest& f);

// Edge hanging a labelled leaf, kNone when the label is isolated.
EdgeId leaf_edge(const Forest& f, LabelId l);

// Vertices on the path between two labels in the same component, endpoints
// included.
std::vector<VertexId> label_path(const Forest& f, LabelId a, LabelId b);

}  // namespace maf
