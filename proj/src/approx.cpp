#include "maf/approx.hpp"

#include <algorithm>

#include "maf/reduction.hpp"

namespace maf {

const char* to_string(MetaStepKind k) {
  switch (k) {
    case MetaStepKind::Rule1: return "rule1";
    case MetaStepKind::Group: return "group";
    case MetaStepKind::MS2: return "ms2";
    case MetaStepKind::MS3_1: return "ms3.1";
    case MetaStepKind::MS3_2: return "ms3.2";
  }
  return "?";
}

int kind_ratio(MetaStepKind kind, bool rooted) {
  switch (kind) {
    case MetaStepKind::Rule1:
    case MetaStepKind::Group: return 1;
    case MetaStepKind::MS3_1: return 2;
    case MetaStepKind::MS2:
    case MetaStepKind::MS3_2: return rooted ? 3 : 4;
  }
  return 0;
}

EdgeSet essential_subset(const Forest& f, const EdgeSet& edges) {
  EdgeSet cur = edges;
  std::sort(cur.begin(), cur.end());
  cur.erase(std::unique(cur.begin(), cur.end()), cur.end());
  const std::string target = remove_edges(f, cur).canonical();
  for (std::size_t i = 0; i < cur.size();) {
    EdgeSet trial = cur;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
    if (remove_edges(f, trial).canonical() == target) cur = std::move(trial);
    else ++i;
  }
  return cur;
}

bool check_metastep_ratio(const MetaStepRecord& rec, const Forest& before) {
  if (rec.declared_ratio != kind_ratio(rec.kind, before.rooted())) return false;
  for (EdgeId e : rec.essential)
    if (std::find(rec.f1_edges.begin(), rec.f1_edges.end(), e) == rec.f1_edges.end()) return false;
  for (EdgeId e : rec.f1_edges)
    if (e < 0 || static_cast<std::size_t>(e) >= before.edge_count()) return false;
  Forest all = remove_edges(before, rec.f1_edges);
  Forest ess = remove_edges(before, rec.essential);
  if (all.canonical() != ess.canonical()) return false;
  if (ess.order() != before.order() + static_cast<int>(rec.essential.size())) return false;
  if (static_cast<int>(rec.f1_edges.size()) > rec.declared_ratio) return false;
  switch (rec.kind) {
    case MetaStepKind::Rule1: return rec.essential.size() == rec.f1_edges.size();
    case MetaStepKind::Group: return rec.f1_edges.empty() && rec.removed.empty();
    default: return !rec.essential.empty() || rec.f1_edges.empty();
  }
}

namespace {

ApproxResult run(const Instance& inst, const ApproxOptions& opts) {
  inst.validate();
  const bool rooted = inst.rooted;
  ApproxResult res;
  Forest f1 = inst.forests[0];

  auto push = [&](MetaStepRecord rec, const Forest& before) {
    rec.essential = essential_subset(before, rec.f1_edges);
    rec.declared_ratio = kind_ratio(rec.kind, rooted);
    res.ratio_bound = std::max(res.ratio_bound, rec.declared_ratio);
    if (opts.keep_snapshots) res.snapshots.push_back(before);
    res.trace.push_back(std::move(rec));
  };

  for (std::size_t i = 1; i < inst.size(); ++i) {
    Forest fi = inst.forests[i];
    const int pair = static_cast<int>(i);
    while (f1.canonical() != fi.canonical()) {
      if (EdgeSet e = removable_edges(fi, f1); !e.empty()) {
        MetaStepRecord rec{MetaStepKind::Rule1, pair, {}, {}, {}, 1};
        for (EdgeId x : e) rec.removed.push_back({1, x});
        push(std::move(rec), f1);
        fi = remove_edges(fi, e);
        continue;
      }
      if (EdgeSet e = removable_edges(f1, fi); !e.empty()) {
        MetaStepRecord rec{MetaStepKind::Rule1, pair, {{0, e[0]}}, {e[0]}, {}, 1};
        push(std::move(rec), f1);
        f1 = remove_edges(f1, EdgeSet{e[0]});
        continue;
      }
      auto mss = find_mss(fi);
      if (!mss) throw std::logic_error("forests differ but no sibling set and no reduction applies");
      if (auto in_f1 = mss_of(f1, mss->labels)) {
        push(MetaStepRecord{MetaStepKind::Group, pair, {}, {}, {}, 1}, f1);
        f1 = group_labels(f1, *in_f1);
        fi = group_labels(fi, *mss);
        continue;
      }

      const LabelSet& S = mss->labels;
      MetaStepRecord rec;
      rec.pair = pair;
      EdgeSet in_fi;
      auto cut_leaves = [&](LabelId a, LabelId b) {
        for (LabelId l : {a, b}) {
          if (EdgeId e = leaf_edge(f1, l); e != kNone) rec.f1_edges.push_back(e);
          if (EdgeId e = leaf_edge(fi, l); e != kNone) in_fi.push_back(e);
        }
      };
      std::size_t picks = rooted ? 1 : 2;

      if (auto sib = siblings_of(f1, S)) {
        rec.kind = MetaStepKind::MS2;
        cut_leaves(S[0], S[1]);
        EdgeSet v = sib->surplus_edges;
        std::sort(v.begin(), v.end());
        for (std::size_t j = 0; j < v.size() && j < picks; ++j) rec.f1_edges.push_back(v[j]);
      } else {
        LabelId a = kNone, b = kNone;
        for (std::size_t x = 0; x < S.size() && a == kNone; ++x)
          for (std::size_t y = x + 1; y < S.size(); ++y)
            if (!siblings_of(f1, {S[x], S[y]})) {
              a = S[x];
              b = S[y];
              break;
            }
        cut_leaves(a, b);
        if (!f1.connected(a, b)) {
          rec.kind = MetaStepKind::MS3_1;
        } else {
          rec.kind = MetaStepKind::MS3_2;
          auto path = label_path(f1, a, b);
          EdgeSet ep;
          for (std::size_t j = 1; j + 1 < path.size(); ++j) {
            if (rooted && f1.vertex(path[j - 1]).parent == path[j] && f1.vertex(path[j + 1]).parent == path[j])
              continue;
            for (EdgeId e : f1.vertex(path[j]).edges) {
              VertexId w = f1.other_end(e, path[j]);
              if (w != path[j - 1] && w != path[j + 1]) ep.push_back(e);
            }
          }
          std::sort(ep.begin(), ep.end());
          for (std::size_t j = 0; j < ep.size() && j < picks; ++j) rec.f1_edges.push_back(ep[j]);
        }
      }
      for (EdgeId e : rec.f1_edges) rec.removed.push_back({0, e});
      for (EdgeId e : in_fi) rec.removed.push_back({1, e});
      Forest before = f1;
      EdgeSet f1_cut = rec.f1_edges;
      push(std::move(rec), before);
      f1 = remove_edges(f1, f1_cut);
      fi = remove_edges(fi, in_fi);
    }
    f1 = expand_labels(f1);
  }

  auto af = certify(f1, inst);
  if (!af) throw std::logic_error("approximation produced a forest that is not an agreement forest");
  res.forest = std::move(*af);
  return res;
}

}  // namespace

ApproxResult approx_rmaf(const Instance& inst, const ApproxOptions& opts) {
  if (!inst.rooted) throw Error("approx_rmaf needs a rooted instance");
  return run(inst, opts);
}

ApproxResult approx_umaf(const Instance& inst, const ApproxOptions& opts) {
  if (inst.rooted) throw Error("approx_umaf needs an unrooted instance");
  return run(inst, opts);
}

ApproxResult approx(const Instance& inst, const ApproxOptions& opts) { return run(inst, opts); }

}  // namespace maf
