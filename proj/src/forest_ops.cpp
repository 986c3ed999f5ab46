#include <algorithm>

#include "maf/forest.hpp"
#include "work_graph.hpp"

namespace maf {

using detail::WorkGraph;

Forest remove_edges(const Forest& f, std::span<const EdgeId> edges) {
  if (edges.empty()) return f;
  std::vector<char> drop(f.edge_count(), 0);
  for (EdgeId e : edges) {
    if (e < 0 || static_cast<std::size_t>(e) >= f.edge_count())
      throw Error("unknown edge id " + std::to_string(e));
    drop[e] = 1;
  }
  auto g = WorkGraph::from(f, &drop);
  g.contract();
  return g.to_forest();
}

namespace {

// Labels reachable from `start` without using edge `skip`.
LabelSet collect_side(const Forest& f, VertexId start, EdgeId skip) {
  LabelSet out;
  std::vector<std::pair<VertexId, EdgeId>> stack{{start, skip}};
  while (!stack.empty()) {
    auto [v, via] = stack.back();
    stack.pop_back();
    if (f.vertex(v).label != kNone) out.push_back(f.vertex(v).label);
    for (EdgeId e : f.vertex(v).edges)
      if (e != via) stack.push_back({f.other_end(e, v), e});
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool sort_by_key(const Forest& f, LabelSet& s) {
  std::sort(s.begin(), s.end(), [&](LabelId a, LabelId b) { return f.labels().key(a) < f.labels().key(b); });
  return true;
}

}  // namespace

EdgeSplit split_labels(const Forest& f, EdgeId e) {
  if (e < 0 || static_cast<std::size_t>(e) >= f.edge_count()) throw Error("unknown edge id " + std::to_string(e));
  auto [u, v] = f.edge(e);
  VertexId near = v, far = u;
  if (f.is_leaf(u) && !f.is_leaf(v)) std::swap(near, far);
  return {e, collect_side(f, near, e), collect_side(f, far, e)};
}

EdgeId leaf_edge(const Forest& f, LabelId l) {
  VertexId v = f.vertex_of(l);
  if (v == kNone) throw Error("label not present");
  const auto& es = f.vertex(v).edges;
  return es.size() == 1 ? es[0] : kNone;
}

std::vector<VertexId> label_path(const Forest& f, LabelId a, LabelId b) {
  VertexId s = f.vertex_of(a), t = f.vertex_of(b);
  if (s == kNone || t == kNone) throw Error("label not present");
  std::vector<VertexId> prev(f.vertex_count(), kNone);
  std::vector<char> seen(f.vertex_count(), 0);
  std::vector<VertexId> queue{s};
  seen[s] = 1;
  for (std::size_t i = 0; i < queue.size() && !seen[t]; ++i) {
    VertexId v = queue[i];
    for (EdgeId e : f.vertex(v).edges) {
      VertexId w = f.other_end(e, v);
      if (!seen[w]) {
        seen[w] = 1;
        prev[w] = v;
        queue.push_back(w);
      }
    }
  }
  if (!seen[t]) throw Error("labels are in different components");
  std::vector<VertexId> path;
  for (VertexId v = t; v != kNone; v = prev[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<SiblingSet> all_mss(const Forest& f) {
  std::vector<SiblingSet> out;
  for (VertexId p = 0; p < static_cast<VertexId>(f.vertex_count()); ++p) {
    const auto& vx = f.vertex(p);
    if (f.rooted()) {
      if (vx.label != kNone) continue;
      auto kids = f.children(p);
      if (kids.size() < 2) continue;
      SiblingSet s;
      s.hub = p;
      bool ok = true;
      for (VertexId c : kids) {
        if (f.vertex(c).label == kNone || !f.children(c).empty()) {
          ok = false;
          break;
        }
        s.labels.push_back(f.vertex(c).label);
      }
      if (!ok) continue;
      sort_by_key(f, s.labels);
      out.push_back(std::move(s));
    } else if (vx.label != kNone) {
      // A single-edge tree; report it once, from its smaller vertex.
      if (vx.edges.size() != 1) continue;
      VertexId w = f.other_end(vx.edges[0], p);
      if (w < p || f.vertex(w).label == kNone || f.degree(w) != 1) continue;
      SiblingSet s;
      s.labels = {vx.label, f.vertex(w).label};
      sort_by_key(f, s.labels);
      out.push_back(std::move(s));
    } else {
      SiblingSet s;
      s.hub = p;
      for (EdgeId e : vx.edges) {
        VertexId w = f.other_end(e, p);
        if (f.is_leaf(w)) s.labels.push_back(f.vertex(w).label);
        else s.surplus_edges.push_back(e);
      }
      if (s.labels.size() < 2 || f.degree(p) > s.labels.size() + 1) continue;
      sort_by_key(f, s.labels);
      out.push_back(std::move(s));
    }
  }
  std::sort(out.begin(), out.end(), [&](const SiblingSet& a, const SiblingSet& b) {
    return f.labels().key(a.labels.front()) < f.labels().key(b.labels.front());
  });
  return out;
}

std::optional<SiblingSet> find_mss(const Forest& f) {
  auto all = all_mss(f);
  if (all.empty()) return std::nullopt;
  return all.front();
}

std::optional<SiblingSet> siblings_of(const Forest& f, const LabelSet& labels) {
  if (labels.size() < 2) return std::nullopt;
  std::vector<VertexId> vs;
  for (LabelId l : labels) {
    VertexId v = f.vertex_of(l);
    if (v == kNone || !f.is_leaf(v)) return std::nullopt;
    vs.push_back(v);
  }
  SiblingSet s;
  s.labels = labels;
  sort_by_key(f, s.labels);
  if (!f.rooted() && labels.size() == 2) {
    EdgeId e = f.vertex(vs[0]).edges.empty() ? kNone : f.vertex(vs[0]).edges[0];
    if (e != kNone && f.other_end(e, vs[0]) == vs[1]) return s;
  }
  VertexId hub = kNone;
  for (VertexId v : vs) {
    if (f.vertex(v).edges.size() != 1) return std::nullopt;
    EdgeId e = f.vertex(v).edges[0];
    if (f.rooted() && f.edge(e).v != v) return std::nullopt;
    VertexId p = f.other_end(e, v);
    if (hub == kNone) hub = p;
    else if (hub != p) return std::nullopt;
  }
  s.hub = hub;
  std::vector<char> member(f.vertex_count(), 0);
  for (VertexId v : vs) member[v] = 1;
  for (EdgeId e : f.vertex(hub).edges) {
    VertexId w = f.other_end(e, hub);
    if (member[w]) continue;
    if (f.rooted() && f.edge(e).u != hub) continue;
    s.surplus_edges.push_back(e);
  }
  return s;
}

std::optional<SiblingSet> mss_of(const Forest& f, const LabelSet& labels) {
  auto s = siblings_of(f, labels);
  if (!s) return std::nullopt;
  // Unrooted hubs may keep one further neighbour, even a leaf outside `labels`.
  std::size_t spare = f.rooted() ? 0 : 1;
  if (s->hub != kNone && s->surplus_edges.size() > spare) return std::nullopt;
  return s;
}

Forest group_labels(const Forest& f, const SiblingSet& s) {
  auto m = mss_of(f, s.labels);
  if (!m || m->hub != s.hub) throw Error("labels do not form a maximal sibling set");
  auto table = f.labels().with_group(m->labels);
  LabelId g = static_cast<LabelId>(table->size() - 1);
  auto w = WorkGraph::from(f);
  w.labels = table;
  if (m->hub != kNone) {
    for (LabelId l : m->labels) w.remove_vertex(f.vertex_of(l));
    w.label[m->hub] = g;
  } else {
    w.remove_vertex(f.vertex_of(m->labels[1]));
    w.label[f.vertex_of(m->labels[0])] = g;
  }
  w.contract();
  return w.to_forest();
}

Forest expand_labels(const Forest& f) {
  const LabelTable& t = f.labels();
  auto base = t.base();
  if (base.get() == &t) return f;
  auto w = WorkGraph::from(f);
  w.labels = base;
  std::vector<VertexId> work;
  for (VertexId v = 0; v < static_cast<VertexId>(w.label.size()); ++v)
    if (w.label[v] != kNone && t.is_grouped(w.label[v])) work.push_back(v);
  while (!work.empty()) {
    VertexId v = work.back();
    work.pop_back();
    LabelId g = w.label[v];
    w.label[v] = kNone;
    for (LabelId m : t[g].grouped) {
      VertexId c = w.add_vertex(m);
      w.add_edge(v, c);
      if (t.is_grouped(m)) work.push_back(c);
    }
  }
  w.contract();
  return w.to_forest();
}

}  // namespace maf
