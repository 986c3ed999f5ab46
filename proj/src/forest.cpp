#include <algorithm>
#include <numeric>

#include "maf/forest.hpp"
#include "work_graph.hpp"

namespace maf {

// ---- Forest ----

std::vector<VertexId> Forest::children(VertexId v) const {
  std::vector<VertexId> out;
  for (EdgeId e : vertices_.at(v).edges) {
    if (!rooted_ || edges_[e].u == v) out.push_back(other_end(e, v));
  }
  return out;
}

std::vector<VertexId> Forest::neighbors(VertexId v) const {
  std::vector<VertexId> out;
  for (EdgeId e : vertices_.at(v).edges) out.push_back(other_end(e, v));
  return out;
}

EdgeId Forest::parent_edge(VertexId v) const {
  if (!rooted_) return kNone;
  for (EdgeId e : vertices_.at(v).edges)
    if (edges_[e].v == v) return e;
  return kNone;
}

std::vector<LabelId> Forest::present_labels() const {
  std::vector<LabelId> out;
  for (std::size_t l = 0; l < vertex_of_label_.size(); ++l)
    if (vertex_of_label_[l] != kNone) out.push_back(static_cast<LabelId>(l));
  return out;
}

bool Forest::has_grouped_labels() const {
  for (std::size_t l = labels_->base_size(); l < vertex_of_label_.size(); ++l)
    if (vertex_of_label_[l] != kNone) return true;
  return false;
}

namespace {

std::string canon_from(const Forest& f, VertexId v, VertexId from) {
  std::vector<std::string> parts;
  for (EdgeId e : f.vertex(v).edges) {
    VertexId w = f.other_end(e, v);
    if (w == from) continue;
    if (f.rooted() && f.edge(e).u != v) continue;
    parts.push_back(canon_from(f, w, v));
  }
  std::string s;
  LabelId l = f.vertex(v).label;
  if (l != kNone) s = std::to_string(l);
  if (!parts.empty()) {
    std::sort(parts.begin(), parts.end());
    s += '(';
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) s += ',';
      s += parts[i];
    }
    s += ')';
  }
  return s;
}

}  // namespace

std::string Forest::canonical() const {
  std::vector<std::string> comps;
  for (int c = 0; c < order(); ++c) {
    VertexId start = component_root_[c];
    if (!rooted_ && !component_labels_[c].empty()) {
      // Unrooted trees are read from their smallest label.
      start = vertex_of(component_labels_[c].front());
    }
    comps.push_back(canon_from(*this, start, kNone));
  }
  std::sort(comps.begin(), comps.end());
  std::string out;
  for (const auto& c : comps) {
    out += c;
    out += ';';
  }
  return out;
}

bool Forest::irreducible() const {
  for (VertexId v = 0; v < static_cast<VertexId>(vertices_.size()); ++v) {
    const Vertex& x = vertices_[v];
    if (x.label != kNone) continue;
    std::size_t d = x.edges.size();
    if (rooted_) {
      std::size_t kids = d - (x.parent != kNone ? 1 : 0);
      if (kids < 2) return false;
    } else if (d < 3) {
      return false;
    }
  }
  return true;
}

void Forest::finish() {
  vertex_of_label_.assign(labels_->size(), kNone);
  for (VertexId v = 0; v < static_cast<VertexId>(vertices_.size()); ++v) {
    LabelId l = vertices_[v].label;
    if (l == kNone) continue;
    if (l < 0 || static_cast<std::size_t>(l) >= labels_->size()) throw Error("label id out of range");
    if (vertex_of_label_[l] != kNone) throw Error("label '" + (*labels_)[l].name + "' occurs twice");
    vertex_of_label_[l] = v;
  }
  if (rooted_ && labels_->root() != kNone) {
    VertexId r = vertex_of_label_[labels_->root()];
    if (r != kNone && vertices_[r].parent != kNone) throw Error("the root label must be a component top");
  }

  component_.assign(vertices_.size(), -1);
  component_labels_.clear();
  component_root_.clear();
  std::size_t seen_edges = 0;
  std::vector<VertexId> stack;
  for (VertexId s = 0; s < static_cast<VertexId>(vertices_.size()); ++s) {
    if (component_[s] != -1) continue;
    int c = static_cast<int>(component_labels_.size());
    component_labels_.emplace_back();
    component_root_.push_back(kNone);
    std::size_t nv = 0, deg_sum = 0;
    component_[s] = c;
    stack.push_back(s);
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      ++nv;
      deg_sum += vertices_[v].edges.size();
      if (vertices_[v].label != kNone) component_labels_[c].push_back(vertices_[v].label);
      if (rooted_ ? vertices_[v].parent == kNone : component_root_[c] == kNone) {
        if (rooted_ && component_root_[c] != kNone) throw Error("component with two tops");
        component_root_[c] = v;
      }
      for (EdgeId e : vertices_[v].edges) {
        VertexId w = other_end(e, v);
        if (component_[w] == -1) {
          component_[w] = c;
          stack.push_back(w);
        }
      }
    }
    if (deg_sum / 2 != nv - 1) throw Error("graph is not a forest");
    seen_edges += deg_sum / 2;
    if (component_root_[c] == kNone) throw Error("component without a top");
    std::sort(component_labels_[c].begin(), component_labels_[c].end());
  }
  (void)seen_edges;
}

bool structurally_equal(const Forest& a, const Forest& b) {
  if (a.rooted() != b.rooted()) return false;
  if (!(a.labels() == b.labels())) {
    if (a.has_grouped_labels() || b.has_grouped_labels() || !a.labels().same_base(b.labels())) return false;
  }
  return a.canonical() == b.canonical();
}

int order(const Forest& f) { return f.order(); }

// ---- ForestBuilder ----

ForestBuilder::ForestBuilder(bool rooted, LabelTablePtr labels) : rooted_(rooted), labels_(std::move(labels)) {
  if (!labels_) throw Error("forest needs a label table");
}

VertexId ForestBuilder::add_vertex(LabelId label) {
  labels_of_.push_back(label);
  return static_cast<VertexId>(labels_of_.size() - 1);
}

EdgeId ForestBuilder::add_edge(VertexId u, VertexId v) {
  auto n = static_cast<VertexId>(labels_of_.size());
  if (u < 0 || v < 0 || u >= n || v >= n || u == v) throw Error("bad edge endpoints");
  edges_.push_back({u, v});
  return static_cast<EdgeId>(edges_.size() - 1);
}

void ForestBuilder::set_label(VertexId v, LabelId label) { labels_of_.at(v) = label; }

Forest ForestBuilder::build_raw() const {
  Forest f;
  f.rooted_ = rooted_;
  f.labels_ = labels_;
  f.vertices_.resize(labels_of_.size());
  for (std::size_t v = 0; v < labels_of_.size(); ++v) f.vertices_[v].label = labels_of_[v];
  f.edges_ = edges_;
  for (EdgeId e = 0; e < static_cast<EdgeId>(edges_.size()); ++e) {
    auto [u, v] = edges_[e];
    f.vertices_[u].edges.push_back(e);
    f.vertices_[v].edges.push_back(e);
    if (rooted_) {
      if (f.vertices_[v].parent != kNone) throw Error("vertex with two parents");
      f.vertices_[v].parent = u;
    }
  }
  f.finish();
  return f;
}

Forest ForestBuilder::build() const { return force_contract(build_raw()); }

// ---- WorkGraph ----

namespace detail {

WorkGraph WorkGraph::from(const Forest& f, const std::vector<char>* drop) {
  WorkGraph g(f.rooted(), f.label_table());
  std::size_t n = f.vertex_count();
  g.label.resize(n);
  g.parent.assign(n, kNone);
  g.nbrs.resize(n);
  g.alive.assign(n, 1);
  for (std::size_t v = 0; v < n; ++v) g.label[v] = f.vertex(static_cast<VertexId>(v)).label;
  for (EdgeId e = 0; e < static_cast<EdgeId>(f.edge_count()); ++e) {
    if (drop && (*drop)[e]) continue;
    g.add_edge(f.edge(e).u, f.edge(e).v);
  }
  return g;
}

VertexId WorkGraph::add_vertex(LabelId l) {
  label.push_back(l);
  parent.push_back(kNone);
  nbrs.emplace_back();
  alive.push_back(1);
  return static_cast<VertexId>(label.size() - 1);
}

void WorkGraph::add_edge(VertexId u, VertexId v) {
  nbrs[u].push_back(v);
  nbrs[v].push_back(u);
  if (rooted) parent[v] = u;
}

void WorkGraph::remove_edge(VertexId u, VertexId v) {
  auto drop = [](std::vector<VertexId>& xs, VertexId x) {
    auto it = std::find(xs.begin(), xs.end(), x);
    if (it != xs.end()) xs.erase(it);
  };
  drop(nbrs[u], v);
  drop(nbrs[v], u);
  if (rooted) {
    if (parent[v] == u) parent[v] = kNone;
    if (parent[u] == v) parent[u] = kNone;
  }
}

void WorkGraph::remove_vertex(VertexId v) {
  auto ns = nbrs[v];
  for (VertexId w : ns) remove_edge(v, w);
  alive[v] = 0;
}

std::vector<VertexId> WorkGraph::children(VertexId v) const {
  std::vector<VertexId> out;
  for (VertexId w : nbrs[v])
    if (!rooted || w != parent[v]) out.push_back(w);
  return out;
}

void WorkGraph::contract() {
  std::vector<VertexId> work;
  for (VertexId v = static_cast<VertexId>(label.size()) - 1; v >= 0; --v)
    if (alive[v]) work.push_back(v);
  while (!work.empty()) {
    VertexId v = work.back();
    work.pop_back();
    if (!alive[v] || label[v] != kNone) continue;
    if (rooted) {
      VertexId p = parent[v];
      auto kids = children(v);
      if (kids.empty()) {
        remove_vertex(v);
        if (p != kNone) work.push_back(p);
      } else if (kids.size() == 1) {
        VertexId c = kids[0];
        remove_vertex(v);
        if (p != kNone) add_edge(p, c);
        else work.push_back(c);
      }
    } else {
      std::size_t d = nbrs[v].size();
      if (d == 0) {
        remove_vertex(v);
      } else if (d == 1) {
        VertexId u = nbrs[v][0];
        remove_vertex(v);
        work.push_back(u);
      } else if (d == 2) {
        VertexId x = nbrs[v][0], y = nbrs[v][1];
        remove_vertex(v);
        add_edge(x, y);
      }
    }
  }
}

Forest WorkGraph::to_forest() const {
  std::vector<VertexId> map(label.size(), kNone);
  std::vector<LabelId> labs;
  for (std::size_t v = 0; v < label.size(); ++v) {
    if (!alive[v]) continue;
    map[v] = static_cast<VertexId>(labs.size());
    labs.push_back(label[v]);
  }
  std::vector<Forest::Edge> edges;
  for (std::size_t v = 0; v < label.size(); ++v) {
    if (!alive[v]) continue;
    if (rooted) {
      if (parent[v] != kNone) edges.push_back({map[parent[v]], map[v]});
    } else {
      for (VertexId w : nbrs[v])
        if (static_cast<std::size_t>(w) > v) edges.push_back({map[v], map[w]});
    }
  }
  return make_forest(rooted, labels, std::move(labs), edges);
}

Forest make_forest(bool rooted, LabelTablePtr labels, std::vector<LabelId> vertex_labels,
                   const std::vector<Forest::Edge>& edges) {
  ForestBuilder b(rooted, std::move(labels));
  for (LabelId l : vertex_labels) b.add_vertex(l);
  for (const auto& e : edges) b.add_edge(e.u, e.v);
  return b.build_raw();
}

}  // namespace detail

Forest force_contract(const Forest& f) {
  auto g = detail::WorkGraph::from(f);
  g.contract();
  return g.to_forest();
}

}  // namespace maf
