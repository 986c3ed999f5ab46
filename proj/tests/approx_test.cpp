#include <doctest.h>

#include <map>

#include "maf/approx.hpp"
#include "maf/oracle.hpp"
#include "test_support.hpp"

using namespace maf;
using namespace maf::test;

namespace {

void audit(const ApproxResult& res) {
  REQUIRE(res.snapshots.size() == res.trace.size());
  for (std::size_t i = 0; i < res.trace.size(); ++i) {
    const auto& rec = res.trace[i];
    CHECK(check_metastep_ratio(rec, res.snapshots[i]));
    // Each essential edge adds exactly one component.
    Forest after = remove_edges(res.snapshots[i], rec.essential);
    CHECK(after.order() == res.snapshots[i].order() + static_cast<int>(rec.essential.size()));
  }
}

}  // namespace

TEST_CASE("identical trees") {
  auto r = instance("((a,b),(c,d));\n((a,b),(c,d));");
  auto res = approx_rmaf(r, {true});
  CHECK(res.forest.order() == 1);
  for (const auto& rec : res.trace) CHECK(rec.kind == MetaStepKind::Group);
  audit(res);
  auto u = instance("((a,b),(c,d),e);\n((a,b),(c,d),e);", false);
  CHECK(approx_umaf(u).forest.order() == 1);
}

TEST_CASE("one rooted move") {
  auto inst = instance("((a,b),c);\n((a,c),b);");
  auto res = approx_rmaf(inst, {true});
  CHECK(res.forest.order() >= 2);
  CHECK(res.forest.order() <= 6);
  CHECK(verify(res.forest, inst));
  CHECK(res.ratio_bound <= 3);
  audit(res);
}

TEST_CASE("conflicting quartets") {
  auto inst = instance("((a,b),(c,d));\n((a,c),(b,d));", false);
  auto res = approx_umaf(inst, {true});
  CHECK(res.forest.order() <= 8);
  CHECK(verify(res.forest, inst));
  audit(res);
}

TEST_CASE("rootedness is checked") {
  CHECK_THROWS_AS(approx_umaf(instance("((a,b),c);\n((a,c),b);")), Error);
  CHECK_THROWS_AS(approx_rmaf(instance("((a,b),(c,d));\n((a,c),(b,d));", false)), Error);
}

TEST_CASE("record kinds carry their ratios") {
  CHECK(kind_ratio(MetaStepKind::Rule1, true) == 1);
  CHECK(kind_ratio(MetaStepKind::Group, false) == 1);
  CHECK(kind_ratio(MetaStepKind::MS3_1, true) == 2);
  CHECK(kind_ratio(MetaStepKind::MS2, true) == 3);
  CHECK(kind_ratio(MetaStepKind::MS3_2, false) == 4);

  std::map<MetaStepKind, int> seen;
  for (std::uint64_t s = 1; s <= 80; ++s) {
    auto inst = small_instance(s, true, 6, 10);
    auto res = approx_rmaf(inst, {true});
    audit(res);
    for (std::size_t i = 0; i < res.trace.size(); ++i) {
      const auto& rec = res.trace[i];
      ++seen[rec.kind];
      CHECK(rec.declared_ratio == kind_ratio(rec.kind, true));
      switch (rec.kind) {
        case MetaStepKind::Rule1: CHECK(rec.essential.size() == rec.f1_edges.size()); break;
        case MetaStepKind::MS3_1: CHECK(rec.f1_edges.size() == 2); break;
        case MetaStepKind::MS2: CHECK(rec.f1_edges.size() == 3); break;
        default: break;
      }
    }
  }
  CHECK(seen[MetaStepKind::Rule1] > 0);
  CHECK(seen[MetaStepKind::Group] > 0);
  CHECK(seen[MetaStepKind::MS3_2] > 0);
}

TEST_CASE("tampered records fail the audit") {
  auto inst = instance("((a,b),c);\n((a,c),b);");
  auto res = approx_rmaf(inst, {true});
  REQUIRE_FALSE(res.trace.empty());
  std::size_t i = 0;
  while (i < res.trace.size() && res.trace[i].f1_edges.empty()) ++i;
  REQUIRE(i < res.trace.size());
  auto rec = res.trace[i];
  rec.declared_ratio += 1;
  CHECK_FALSE(check_metastep_ratio(rec, res.snapshots[i]));
  rec = res.trace[i];
  rec.essential.push_back(rec.essential.empty() ? 0 : rec.essential[0]);
  CHECK_FALSE(check_metastep_ratio(rec, res.snapshots[i]));
}

TEST_CASE("ratio against the oracle") {
  for (std::uint64_t s = 1; s <= 100; ++s) {
    bool rooted = s % 2;
    auto inst = small_instance(s * 13, rooted);
    int opt = brute_force_maf(inst).opt_order;
    auto res = approx(inst);
    CHECK(verify(res.forest, inst));
    CHECK(res.forest.order() >= opt);
    CHECK(res.forest.order() <= (rooted ? 3 : 4) * opt);
  }
}

TEST_CASE("essential subset") {
  auto inst = instance("((a,b),c);");
  const Forest& t = inst.forests[0];
  VertexId cherry = t.vertex(t.vertex_of(id(inst, "a"))).parent;
  // Cutting both leaves of the cherry makes its parent edge redundant.
  EdgeSet e{leaf_edge_of(t, inst, "a"), leaf_edge_of(t, inst, "b"), t.parent_edge(cherry)};
  auto ess = essential_subset(t, e);
  CHECK(ess.size() == 2);
  CHECK(remove_edges(t, ess).canonical() == remove_edges(t, e).canonical());
}
