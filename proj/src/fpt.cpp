#include "maf/fpt.hpp"

#include <algorithm>
#include <future>
#include <limits>

#include "maf/reduction.hpp"

namespace maf {

SearchStats& SearchStats::operator+=(const SearchStats& o) {
  nodes += o.nodes;
  leaves += o.leaves;
  max_depth = std::max(max_depth, o.max_depth);
  groupings += o.groupings;
  case2 += o.case2;
  case3_1 += o.case3_1;
  case3_2 += o.case3_2;
  depth_violations += o.depth_violations;
  return *this;
}

std::uint64_t leaf_bound(bool rooted, int k) {
  std::uint64_t b = 1, base = rooted ? 3 : 4;
  for (int i = 0; i < k; ++i) {
    if (b > std::numeric_limits<std::uint64_t>::max() / base) return std::numeric_limits<std::uint64_t>::max();
    b *= base;
  }
  return b;
}

Forest unique_maximal_af(const Forest& f1, const Forest& f2) {
  if (find_mss(f2)) throw Error("second forest still has a maximal sibling set");
  if (f2.edge_count() == 0) return f2;
  if (f2.edge_count() > 1) throw Error("second forest has more than one edge");
  const auto& e = f2.edge(0);
  LabelId x = f2.vertex(e.u).label, y = f2.vertex(e.v).label;
  if (x == kNone || y == kNone) throw Error("single edge with an unlabelled end");
  if (f1.has_label(x) && f1.has_label(y) && f1.connected(x, y)) return f2;
  EdgeSet all{0};
  return remove_edges(f2, all);
}

namespace {

struct State {
  Forest f1, f2;
  std::size_t next = 0;  // index of the input forest paired after f2
};

struct Branch {
  EdgeSet in_f1, in_f2;
};

class Search {
 public:
  Search(const Instance& inst, int k, int jobs, int base_order)
      : inst_(inst), k_(k), jobs_(jobs), base_order_(base_order) {}

  std::optional<Forest> run(State s, int depth, SearchStats& st) const {
    ++st.nodes;
    st.max_depth = std::max(st.max_depth, depth);
    if (depth > s.f1.order() - base_order_) ++st.depth_violations;
    const bool rooted = inst_.rooted;
    for (;;) {
      if (s.f1.order() > k_) {
        ++st.leaves;
        return std::nullopt;
      }
      auto red = reduce_pair(s.f1, s.f2, false);
      s.f1 = std::move(red.p);
      s.f2 = std::move(red.q);
      if (s.f1.order() > k_) {
        ++st.leaves;
        return std::nullopt;
      }

      auto mss = find_mss(s.f2);
      if (!mss) {
        Forest done = expand_labels(unique_maximal_af(s.f1, s.f2));
        if (s.next == inst_.size() || done.order() > k_) {
          ++st.leaves;
          if (done.order() > k_) return std::nullopt;
          return done;
        }
        s.f1 = std::move(done);
        s.f2 = inst_.forests[s.next++];
        continue;
      }

      if (auto in_f1 = mss_of(s.f1, mss->labels)) {
        s.f1 = group_labels(s.f1, *in_f1);
        s.f2 = group_labels(s.f2, *mss);
        ++st.groupings;
        continue;
      }

      std::vector<Branch> branches;
      auto cut_both = [&](LabelId l) {
        Branch b;
        if (EdgeId e = leaf_edge(s.f1, l); e != kNone) b.in_f1.push_back(e);
        if (EdgeId e = leaf_edge(s.f2, l); e != kNone) b.in_f2.push_back(e);
        return b;
      };
      const LabelSet& S = mss->labels;

      if (auto sib = siblings_of(s.f1, S)) {
        ++st.case2;
        branches.push_back(cut_both(S[0]));
        branches.push_back(cut_both(S[1]));
        EdgeSet v = sib->surplus_edges;
        std::sort(v.begin(), v.end());
        if (rooted) {
          branches.push_back({v, {}});
        } else {
          branches.push_back({{v.front()}, {}});
          if (v.back() != v.front()) branches.push_back({{v.back()}, {}});
        }
      } else {
        LabelId a = kNone, b = kNone;
        for (std::size_t i = 0; i < S.size() && a == kNone; ++i)
          for (std::size_t j = i + 1; j < S.size(); ++j)
            if (!siblings_of(s.f1, {S[i], S[j]})) {
              a = S[i];
              b = S[j];
              break;
            }
        if (a == kNone) throw std::logic_error("sibling set neither grouped nor split");
        branches.push_back(cut_both(a));
        branches.push_back(cut_both(b));
        if (!s.f1.connected(a, b)) {
          ++st.case3_1;
        } else {
          ++st.case3_2;
          auto path = label_path(s.f1, a, b);
          auto off_path = [&](std::size_t i) {
            EdgeSet out;
            for (EdgeId e : s.f1.vertex(path[i]).edges) {
              VertexId w = s.f1.other_end(e, path[i]);
              if (w != path[i - 1] && w != path[i + 1]) out.push_back(e);
            }
            return out;
          };
          if (rooted) {
            EdgeSet ep;
            for (std::size_t i = 1; i + 1 < path.size(); ++i) {
              bool lca = s.f1.vertex(path[i - 1]).parent == path[i] && s.f1.vertex(path[i + 1]).parent == path[i];
              if (lca) continue;
              auto more = off_path(i);
              ep.insert(ep.end(), more.begin(), more.end());
            }
            std::sort(ep.begin(), ep.end());
            branches.push_back({ep, {}});
          } else {
            branches.push_back({off_path(1), {}});
            branches.push_back({off_path(path.size() - 2), {}});
          }
        }
      }
      return explore(s, branches, depth, st);
    }
  }

 private:
  std::optional<Forest> explore(const State& s, const std::vector<Branch>& branches, int depth,
                                SearchStats& st) const {
    auto child = [&](const Branch& b) {
      return State{remove_edges(s.f1, b.in_f1), remove_edges(s.f2, b.in_f2), s.next};
    };
    if (jobs_ > 1 && depth < 2) {
      std::vector<std::future<std::pair<std::optional<Forest>, SearchStats>>> futures;
      for (const auto& b : branches) {
        futures.push_back(std::async(std::launch::async, [this, c = child(b), depth]() {
          SearchStats local;
          auto r = run(c, depth + 1, local);
          return std::make_pair(std::move(r), local);
        }));
      }
      std::optional<Forest> found;
      for (auto& fut : futures) {
        auto [r, local] = fut.get();
        st += local;
        if (!found && r) found = std::move(r);
      }
      return found;
    }
    for (const auto& b : branches) {
      if (auto r = run(child(b), depth + 1, st)) return r;
    }
    return std::nullopt;
  }

  const Instance& inst_;
  int k_;
  int jobs_;
  int base_order_;
};

SolveResult solve_checked(const SolveRequest& req) {
  const Instance& inst = req.instance;
  inst.validate();
  if (req.k < 1) throw Error("k must be at least 1");
  SolveResult res;
  const Forest& first = inst.forests[0];
  if (inst.size() == 1) {
    res.stats.nodes = res.stats.leaves = 1;
    if (first.order() <= req.k) res.forest = certify(first, inst);
    return res;
  }
  Search search(inst, req.k, req.jobs, first.order());
  auto found = search.run(State{first, inst.forests[1], 2}, 0, res.stats);
  if (found) {
    res.forest = certify(*found, inst);
    if (!res.forest) throw std::logic_error("search returned a forest that is not an agreement forest");
  }
  return res;
}

}  // namespace

SolveResult solve_rmaf(const SolveRequest& req) {
  if (!req.instance.rooted) throw Error("solve_rmaf needs a rooted instance");
  return solve_checked(req);
}

SolveResult solve_umaf(const SolveRequest& req) {
  if (req.instance.rooted) throw Error("solve_umaf needs an unrooted instance");
  return solve_checked(req);
}

SolveResult solve(const SolveRequest& req) { return solve_checked(req); }

std::optional<MinKResult> find_min_k(const Instance& inst, int k_lo, int k_hi, int jobs) {
  MinKResult out;
  for (int k = std::max(1, k_lo); k <= k_hi; ++k) {
    auto r = solve(SolveRequest{inst, k, jobs});
    out.total += r.stats;
    ++out.k_tried;
    if (r.forest) {
      out.order = r.forest->order();
      out.forest = std::move(*r.forest);
      out.stats = r.stats;
      return out;
    }
  }
  return std::nullopt;
}

}  // namespace maf
