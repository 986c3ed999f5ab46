#include <algorithm>

#include "maf/forest.hpp"
#include "maf/instance.hpp"

namespace maf {

namespace {

void check_universe(const Forest& sub, const Forest& f) {
  if (sub.rooted() != f.rooted()) throw Error("rooted and unrooted forests mixed");
  if (!sub.labels().same_base(f.labels()) || sub.present_labels() != f.present_labels())
    throw Error("forests are over different label sets");
}

}  // namespace

std::optional<EdgeSet> embedding_complement(const Forest& sub, const Forest& f) {
  if (sub.has_grouped_labels() || f.has_grouped_labels())
    throw Error("embedding_complement needs forests without grouped labels");
  check_universe(sub, f);

  std::size_t nv = f.vertex_count();
  std::vector<char> used(nv, 0), keep_edge(f.edge_count(), 0);
  std::vector<int> count(nv, 0);
  std::vector<VertexId> order, parent(nv, kNone);
  std::vector<EdgeId> via(nv, kNone);

  for (const auto& labels : sub.component_labels()) {
    int comp = f.component_of_label(labels.front());
    for (LabelId l : labels)
      if (f.component_of_label(l) != comp) return std::nullopt;
    VertexId start = f.vertex_of(labels.front());
    if (labels.size() == 1) {
      if (used[start]) return std::nullopt;
      used[start] = 1;
      continue;
    }
    // Preorder from the first label, then count labels per subtree; the
    // minimal subtree spanning the labels is the start vertex plus every
    // vertex whose subtree holds one of them.
    order.clear();
    order.push_back(start);
    parent[start] = kNone;
    via[start] = kNone;
    for (std::size_t i = 0; i < order.size(); ++i) {
      VertexId v = order[i];
      count[v] = 0;
      for (EdgeId e : f.vertex(v).edges) {
        VertexId w = f.other_end(e, v);
        if (w == parent[v]) continue;
        parent[w] = v;
        via[w] = e;
        order.push_back(w);
      }
    }
    for (LabelId l : labels) count[f.vertex_of(l)] = 1;
    for (std::size_t i = order.size(); i-- > 1;) count[parent[order[i]]] += count[order[i]];
    for (VertexId v : order) {
      if (count[v] == 0) continue;
      if (used[v]) return std::nullopt;
      used[v] = 1;
      if (via[v] != kNone) keep_edge[via[v]] = 1;
    }
  }

  EdgeSet drop;
  for (EdgeId e = 0; e < static_cast<EdgeId>(f.edge_count()); ++e)
    if (!keep_edge[e]) drop.push_back(e);
  Forest r = remove_edges(f, drop);
  if (r.canonical() != sub.canonical()) return std::nullopt;
  return drop;
}

bool is_subforest(const Forest& sub, const Forest& f) {
  if (sub.has_grouped_labels() || f.has_grouped_labels())
    return is_subforest(expand_labels(sub), expand_labels(f));
  return embedding_complement(sub, f).has_value();
}

std::size_t Instance::taxa() const {
  return labels->base_size() - (labels->root() != kNone ? 1 : 0);
}

void Instance::validate() const {
  if (!labels) throw Error("instance without labels");
  if (forests.empty()) throw Error("instance without forests");
  if (rooted != (labels->root() != kNone)) throw Error("root label present iff rooted");
  if (rooted && labels->base_size() < 2) throw Error("a rooted instance needs at least one taxon");
  if (labels->base_size() < 1) throw Error("instance without labels");
  for (const auto& f : forests) {
    if (f.rooted() != rooted) throw Error("rooted and unrooted forests mixed");
    if (!f.labels().same_base(*labels)) throw Error("forests are over different label tables");
    if (f.has_grouped_labels()) throw Error("input forest with grouped labels");
    if (f.present_labels().size() != labels->base_size()) throw Error("forest does not carry every label");
    if (!f.irreducible()) throw Error("input forest is not contracted");
  }
}

std::optional<AgreementForest> certify(const Forest& candidate, const Instance& inst) {
  Forest c = candidate.has_grouped_labels() ? expand_labels(candidate) : candidate;
  AgreementForest af{c, {}};
  for (const auto& f : inst.forests) {
    auto w = embedding_complement(c, f);
    if (!w) return std::nullopt;
    af.witnesses.push_back(std::move(*w));
  }
  return af;
}

bool verify(const AgreementForest& af, const Instance& inst) {
  if (af.witnesses.size() != inst.forests.size()) return false;
  for (std::size_t i = 0; i < inst.forests.size(); ++i) {
    const Forest& f = inst.forests[i];
    if (!is_subforest(af.forest, f)) return false;
    for (EdgeId e : af.witnesses[i])
      if (e < 0 || static_cast<std::size_t>(e) >= f.edge_count()) return false;
    if (!structurally_equal(remove_edges(f, af.witnesses[i]), af.forest)) return false;
  }
  return true;
}

}  // namespace maf
