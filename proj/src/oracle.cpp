#include "maf/oracle.hpp"

namespace maf {

namespace {

bool next_combination(std::vector<int>& idx, int n) {
  int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

OracleResult brute_force_maf(const Instance& inst, std::size_t max_edges) {
  inst.validate();
  const Forest& f1 = inst.forests[0];
  if (f1.edge_count() > max_edges)
    throw Error("instance too large for brute force: " + std::to_string(f1.edge_count()) + " edges, limit " +
                std::to_string(max_edges));
  int n = static_cast<int>(f1.edge_count());
  OracleResult res;
  for (int size = 0; size <= n; ++size) {
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    do {
      EdgeSet e(idx.begin(), idx.end());
      Forest cand = remove_edges(f1, e);
      ++res.subsets_examined;
      // A set with a redundant edge yields a forest some smaller set already
      // produced.
      if (cand.order() != f1.order() + size) continue;
      bool ok = true;
      for (std::size_t i = 1; i < inst.size() && ok; ++i) ok = is_subforest(cand, inst.forests[i]);
      if (!ok) continue;
      auto af = certify(cand, inst);
      if (!af) throw std::logic_error("oracle candidate failed certification");
      res.opt_order = cand.order();
      res.witness = std::move(*af);
      return res;
    } while (size > 0 && next_combination(idx, n));
  }
  throw std::logic_error("no agreement forest found");
}

}  // namespace maf
