#include "maf/reduction.hpp"

#include <algorithm>
#include <map>

namespace maf {

EdgeSet removable_edges(const Forest& target, const Forest& witness) {
  std::vector<char> crossed(target.edge_count(), 0);
  std::size_t nv = target.vertex_count();
  std::vector<VertexId> order, parent(nv, kNone);
  std::vector<EdgeId> via(nv, kNone);
  std::vector<int> count(nv, 0);
  std::map<int, std::vector<VertexId>> groups;

  for (int c = 0; c < target.order(); ++c) {
    const auto& labels = target.component_labels()[c];
    if (labels.size() < 2) continue;
    groups.clear();
    for (LabelId l : labels) groups[witness.component_of_label(l)].push_back(target.vertex_of(l));
    if (groups.size() == labels.size()) continue;  // nothing spans two labels

    VertexId start = target.component_root(c);
    order.clear();
    order.push_back(start);
    parent[start] = kNone;
    for (std::size_t i = 0; i < order.size(); ++i) {
      VertexId v = order[i];
      for (EdgeId e : target.vertex(v).edges) {
        VertexId w = target.other_end(e, v);
        if (w == parent[v]) continue;
        parent[w] = v;
        via[w] = e;
        order.push_back(w);
      }
    }
    for (const auto& [wc, vs] : groups) {
      if (vs.size() < 2) continue;
      for (VertexId v : order) count[v] = 0;
      for (VertexId v : vs) count[v] = 1;
      int total = static_cast<int>(vs.size());
      for (std::size_t i = order.size(); i-- > 1;) {
        VertexId v = order[i];
        if (count[v] > 0 && count[v] < total) crossed[via[v]] = 1;
        count[parent[v]] += count[v];
      }
    }
  }
  EdgeSet out;
  for (EdgeId e = 0; e < static_cast<EdgeId>(target.edge_count()); ++e)
    if (!crossed[e]) out.push_back(e);
  return out;
}

namespace {

void record(ReductionTrace& trace, const Forest& target, int ti, const Forest& witness, int wi,
            const EdgeSet& edges) {
  for (EdgeId e : edges) {
    Removal r{ti, e, wi, {}};
    auto split = split_labels(target, e);
    std::vector<char> hit(witness.order(), 0);
    for (LabelId l : split.side1) hit[witness.component_of_label(l)] = 1;
    for (int c = 0; c < witness.order(); ++c)
      if (hit[c]) r.witness_components.push_back(witness.component_labels()[c]);
    trace.removals.push_back(std::move(r));
  }
}

}  // namespace

PairReduction reduce_pair(const Forest& fp, const Forest& fq, bool with_trace) {
  PairReduction out{fp, fq, {}};
  for (;;) {
    EdgeSet e = removable_edges(out.q, out.p);
    if (!e.empty()) {
      if (with_trace) record(out.trace, out.q, 1, out.p, 0, e);
      out.q = remove_edges(out.q, e);
      continue;
    }
    e = removable_edges(out.p, out.q);
    if (!e.empty()) {
      if (with_trace) record(out.trace, out.p, 0, out.q, 1, e);
      out.p = remove_edges(out.p, e);
      continue;
    }
    return out;
  }
}

std::pair<Instance, ReductionTrace> reduce_instance(const Instance& inst) {
  Instance out = inst;
  ReductionTrace trace;
  int m = static_cast<int>(out.forests.size());
  bool changed = true;
  while (changed) {
    changed = false;
    for (int p = 0; p < m && !changed; ++p) {
      for (int q = 0; q < m && !changed; ++q) {
        if (p == q) continue;
        EdgeSet e = removable_edges(out.forests[q], out.forests[p]);
        if (e.empty()) continue;
        record(trace, out.forests[q], q, out.forests[p], p, e);
        out.forests[q] = remove_edges(out.forests[q], e);
        changed = true;
      }
    }
  }
  return {out, trace};
}

bool strongly_reducible(const std::vector<Forest>& forests) {
  for (std::size_t p = 0; p < forests.size(); ++p)
    for (std::size_t q = 0; q < forests.size(); ++q)
      if (p != q && !removable_edges(forests[q], forests[p]).empty()) return false;
  return true;
}

}  // namespace maf
