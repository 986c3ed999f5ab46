#include "maf/datagen.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "maf/newick.hpp"
#include "work_graph.hpp"

namespace maf {

using detail::WorkGraph;

LabelTablePtr numbered_labels(int n, bool rooted) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back(std::to_string(i));
  return std::make_shared<LabelTable>(names, rooted);
}

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

VertexId build_split(ForestBuilder& b, const std::vector<LabelId>& taxa, std::size_t lo, std::size_t hi, Rng& rng) {
  if (hi - lo == 1) return b.add_vertex(taxa[lo]);
  std::size_t cut = lo + static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(hi - lo) - 1));
  VertexId v = b.add_vertex();
  VertexId left = build_split(b, taxa, lo, cut, rng);
  VertexId right = build_split(b, taxa, cut, hi, rng);
  b.add_edge(v, left);
  b.add_edge(v, right);
  return v;
}

Forest random_binary_tree(int n, Rng& rng, const LabelTablePtr& labels) {
  if (n < 1) throw Error("a tree needs at least one taxon");
  std::vector<LabelId> taxa(n);
  std::iota(taxa.begin(), taxa.end(), 1);
  std::shuffle(taxa.begin(), taxa.end(), rng);
  ForestBuilder b(true, labels);
  VertexId root = b.add_vertex(labels->root());
  VertexId top = build_split(b, taxa, 0, taxa.size(), rng);
  b.add_edge(root, top);
  return b.build();
}

std::vector<EdgeId> internal_edges(const Forest& t) {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < static_cast<EdgeId>(t.edge_count()); ++e)
    if (t.vertex(t.edge(e).u).label == kNone && t.vertex(t.edge(e).v).label == kNone) out.push_back(e);
  return out;
}

}  // namespace

Forest random_binary_tree(int n, Rng& rng) { return random_binary_tree(n, rng, numbered_labels(n, true)); }

Forest random_binary_tree(int n, std::uint64_t seed) {
  Rng rng(seed);
  return random_binary_tree(n, rng);
}

Forest contract_random_edges(const Forest& t, int count, Rng& rng) {
  Forest cur = t;
  for (int i = 0; i < count; ++i) {
    auto cand = internal_edges(cur);
    if (cand.empty()) throw Error("no internal edge left to contract");
    EdgeId e = cand[uniform(rng, 0, static_cast<int>(cand.size()) - 1)];
    auto [u, v] = cur.edge(e);
    auto g = WorkGraph::from(cur);
    for (VertexId w : std::vector<VertexId>(g.nbrs[v])) {
      if (w == u) continue;
      g.remove_edge(v, w);
      g.add_edge(u, w);
    }
    g.remove_vertex(v);
    g.contract();
    cur = g.to_forest();
  }
  return cur;
}

Forest contract_random_edges(const Forest& t, int count, std::uint64_t seed) {
  Rng rng(seed);
  return contract_random_edges(t, count, rng);
}

Forest apply_random_spr(const Forest& t, int x, Rng& rng) {
  if (!t.rooted() || t.labels().root() == kNone) throw Error("SPR moves need a rooted tree");
  if (t.order() != 1) throw Error("SPR moves need a tree");
  Forest cur = t;
  for (int step = 0; step < x; ++step) {
    bool moved = false;
    for (int attempt = 0; attempt < 1000 && !moved; ++attempt) {
      LabelId root = cur.labels().root();
      VertexId rv = cur.vertex_of(root);
      std::vector<EdgeId> prunable;
      for (EdgeId e = 0; e < static_cast<EdgeId>(cur.edge_count()); ++e)
        if (cur.edge(e).u != rv) prunable.push_back(e);
      if (prunable.empty()) throw Error("tree too small for an SPR move");
      EdgeId pe = prunable[uniform(rng, 0, static_cast<int>(prunable.size()) - 1)];
      auto [pu, pv] = cur.edge(pe);

      auto g = WorkGraph::from(cur);
      g.remove_edge(pu, pv);
      g.contract();
      // Edges of the part still hanging below the root label.
      std::vector<std::pair<VertexId, VertexId>> targets;
      std::vector<VertexId> stack{rv};
      while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        for (VertexId c : g.children(v)) {
          if (v != rv) targets.push_back({v, c});
          stack.push_back(c);
        }
      }
      if (targets.empty() || !g.alive[pv]) continue;
      auto [w, z] = targets[uniform(rng, 0, static_cast<int>(targets.size()) - 1)];
      VertexId s = g.add_vertex();
      g.remove_edge(w, z);
      g.add_edge(w, s);
      g.add_edge(s, z);
      g.add_edge(s, pv);
      g.contract();
      cur = g.to_forest();
      moved = true;
    }
    if (!moved) throw Error("no legal SPR move found");
  }
  return cur;
}

Forest apply_random_spr(const Forest& t, int x, std::uint64_t seed) {
  Rng rng(seed);
  return apply_random_spr(t, x, rng);
}

Forest unroot(const Forest& t, const LabelTablePtr& labels) {
  if (!t.rooted()) return t;
  LabelId root = t.labels().root();
  WorkGraph g(false, labels);
  for (const auto& v : t.vertices()) {
    LabelId l = kNone;
    if (v.label != kNone && v.label != root) {
      auto found = labels->find(t.labels()[v.label].name);
      if (!found) throw Error("label missing from the unrooted table");
      l = *found;
    }
    g.add_vertex(l);
  }
  VertexId rv = t.vertex_of(root);
  for (const auto& e : t.edges())
    if (e.u != rv && e.v != rv) g.add_edge(e.u, e.v);
  if (rv != kNone) g.alive[rv] = 0;
  g.contract();
  return g.to_forest();
}

Instance generate_instance(const GenSpec& spec) {
  if (spec.n < 3) throw Error("generation needs n >= 3");
  if (spec.m < 2) throw Error("generation needs m >= 2");
  if (spec.x < 0) throw Error("generation needs x >= 0");
  Rng rng(spec.seed);
  auto labels = numbered_labels(spec.n, true);
  Forest t0 = random_binary_tree(spec.n, rng, labels);
  int internal = static_cast<int>(internal_edges(t0).size());
  int c = spec.contract_count ? *spec.contract_count : uniform(rng, 0, internal / 2);
  if (c < 0 || c > internal) throw Error("contract count out of range");
  t0 = contract_random_edges(t0, c, rng);

  Instance inst;
  inst.rooted = true;
  inst.labels = labels;
  inst.forests.push_back(t0);
  for (int i = 1; i < spec.m; ++i) inst.forests.push_back(apply_random_spr(t0, spec.x, rng));

  if (!spec.rooted) {
    auto plain = numbered_labels(spec.n, false);
    for (auto& f : inst.forests) f = unroot(f, plain);
    inst.rooted = false;
    inst.labels = plain;
  }
  inst.validate();
  return inst;
}

std::string instance_text(const Instance& inst, const GenSpec& spec) {
  std::ostringstream out;
  out << "# spec n=" << spec.n << " m=" << spec.m << " x=" << spec.x << " seed=" << spec.seed
      << " rooted=" << (spec.rooted ? 1 : 0);
  if (spec.contract_count) out << " contract=" << *spec.contract_count;
  out << '\n';
  for (const auto& f : inst.forests) out << serialize(f);
  return out.str();
}

}  // namespace maf
