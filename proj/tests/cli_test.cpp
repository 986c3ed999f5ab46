#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "maf/commands.hpp"
#include "test_support.hpp"

using namespace maf;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run maf_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "maf");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("maf_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
};

std::string slurp(const std::string& path) { return read_text_file(path); }

std::vector<std::string> csv_rows(const std::string& csv) {
  std::vector<std::string> rows;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    std::size_t end = csv.find("\r\n", pos);
    rows.push_back(csv.substr(pos, end - pos));
    pos = end + 2;
  }
  return rows;
}

std::vector<std::string> split(const std::string& row) {
  std::vector<std::string> out(1);
  for (char c : row) {
    if (c == ',') out.emplace_back();
    else out.back() += c;
  }
  return out;
}

}  // namespace

TEST_CASE("pmaf") {
  TempDir dir;
  auto same = dir.file("same.nwk", "((a,b),c);\n((a,b),c);\n");
  auto spr = dir.file("spr.nwk", "((a,b),c);\n((a,c),b);\n");
  auto r = maf_cli({"pmaf", same});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("order: 1\n", 0) == 0);

  r = maf_cli({"pmaf", spr, "--verify"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("order: 2\n", 0) == 0);
  CHECK(r.out.find("verified: yes") != std::string::npos);

  r = maf_cli({"pmaf", spr, "--k", "1"});
  CHECK(r.code == 1);
  r = maf_cli({"pmaf", spr, "--k", "2", "--jobs", "2"});
  CHECK(r.code == 0);

  auto cert = (dir.path / "cert.nwk").string();
  r = maf_cli({"pmaf", spr, "--out", cert});
  CHECK(r.code == 0);
  auto inst = parse_instance(slurp(spr), true);
  AgreementForest af{parse_forest(slurp(cert), inst.labels, true), {}};
  auto certified = certify(af.forest, inst);
  REQUIRE(certified);
  CHECK(certified->order() == 2);

  auto quartets = dir.file("q.nwk", "((a,b),(c,d));\n((a,c),(b,d));\n");
  r = maf_cli({"pmaf", "--unrooted", quartets});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("order: 2\n", 0) == 0);
}

TEST_CASE("input errors exit with 2") {
  TempDir dir;
  CHECK(maf_cli({"pmaf", (dir.path / "missing.nwk").string()}).code == 2);
  auto bad = dir.file("bad.nwk", "((a,b),c;\n");
  auto r = maf_cli({"pmaf", bad});
  CHECK(r.code == 2);
  CHECK(r.err.find("error") != std::string::npos);
  auto mismatch = dir.file("mm.nwk", "((a,b),c);\n((a,c),d);\n");
  CHECK(maf_cli({"amaf", mismatch}).code == 2);
  CHECK(maf_cli({"pmaf"}).code == 2);
  CHECK(maf_cli({"frobnicate"}).code == 2);
  CHECK(maf_cli({"pmaf", bad, "--rooted", "--unrooted"}).code == 2);
  CHECK(maf_cli({"--help"}).code == 0);
}

TEST_CASE("amaf") {
  TempDir dir;
  auto same = dir.file("same.nwk", "((a,b),c);\n((a,b),c);\n");
  auto r = maf_cli({"amaf", same, "--verify"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("order: 1\n", 0) == 0);
  auto spr = dir.file("spr.nwk", "((a,b),c);\n((a,c),b);\n");
  r = maf_cli({"amaf", spr, "--verify"});
  CHECK(r.code == 0);
  CHECK(r.out.find("ratio_bound: 3") != std::string::npos);
  CHECK(r.out.find("verified: yes") != std::string::npos);
}

TEST_CASE("gen") {
  TempDir dir;
  auto a = (dir.path / "a.nwk").string();
  auto b = (dir.path / "b.nwk").string();
  CHECK(maf_cli({"gen", "-n", "5", "-m", "2", "-x", "0", "--seed", "7", "--out", a}).code == 0);
  CHECK(maf_cli({"gen", "-n", "5", "-m", "2", "-x", "0", "--seed", "7", "--out", b}).code == 0);
  CHECK(slurp(a) == slurp(b));
  auto inst = parse_instance(slurp(a), true);
  REQUIRE(inst.size() == 2);
  CHECK(inst.forests[0].canonical() == inst.forests[1].canonical());

  auto r = maf_cli({"gen", "-n", "6", "-m", "3", "-x", "1", "--unrooted", "--seed", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("rooted=0") != std::string::npos);
  CHECK(parse_instance(r.out, false).size() == 3);

  CHECK(maf_cli({"gen", "-n", "2", "-m", "2", "-x", "0"}).code == 2);
}

TEST_CASE("gen then pmaf stays under the move bound") {
  TempDir dir;
  auto f = (dir.path / "t40-5.nwk").string();
  REQUIRE(maf_cli({"gen", "-n", "40", "-m", "5", "-x", "2", "--seed", "1", "--out", f}).code == 0);
  auto r = maf_cli({"pmaf", f, "--verify"});
  REQUIRE(r.code == 0);
  int order = std::stoi(r.out.substr(r.out.find(' ') + 1));
  CHECK(order <= 9);
}

TEST_CASE("bench") {
  TempDir dir;
  SUBCASE("empty directory") {
    auto r = maf_cli({"bench", dir.path.string()});
    CHECK(r.code == 0);
    CHECK(r.out == csv_line(bench_columns()));
  }
  SUBCASE("oracle-sized corpus") {
    for (int s = 1; s <= 6; ++s) {
      GenSpec g;
      g.n = 6;
      g.m = 2 + s % 2;
      g.x = 1 + s % 2;
      g.seed = static_cast<std::uint64_t>(s);
      dir.file("i" + std::to_string(s) + ".nwk", instance_text(generate_instance(g), g));
    }
    dir.file("broken.nwk", "((a,b),c\n");
    auto r = maf_cli({"bench", dir.path.string(), "--mode", "all", "--jobs", "2"});
    CHECK(r.code == 0);
    auto rows = csv_rows(r.out);
    REQUIRE(rows.size() > 1);
    CHECK(rows[0] == "instance,n,m,rooted,method,order,ratio,wall_ms,nodes,leaves,status");
    // Rows follow file names.
    CHECK(rows[1].rfind("broken.nwk,", 0) == 0);
    CHECK(rows[1].find("skipped") != std::string::npos);
    int approx_rows = 0, aggregates = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      auto f = split(rows[i]);
      if (f[4] == "approx") {
        ++approx_rows;
        REQUIRE_FALSE(f[6].empty());
        CHECK(std::stod(f[6]) <= 3.0);
        CHECK(std::stod(f[6]) >= 1.0);
      }
      if (f[4] == "aggregate") ++aggregates;
      if (f[4] == "fpt" || f[4] == "oracle") CHECK(f[10] == "ok");
    }
    CHECK(approx_rows == 6);
    CHECK(aggregates == 2);
  }
  SUBCASE("aggregate rows per size") {
    for (int m : {2, 3}) {
      GenSpec g;
      g.n = 40;
      g.m = m;
      g.x = 1;
      dir.file("t40-" + std::to_string(m) + ".nwk", instance_text(generate_instance(g), g));
    }
    auto out = (dir.path / "report.csv").string();
    auto r = maf_cli({"bench", dir.path.string(), "--mode", "approx", "--out", out});
    CHECK(r.code == 0);
    std::vector<std::string> names;
    for (const auto& row : csv_rows(slurp(out))) {
      auto f = split(row);
      if (f[4] == "aggregate") names.push_back(f[0]);
    }
    CHECK(names == std::vector<std::string>{"t40-2", "t40-3"});
  }
  SUBCASE("not a directory") {
    CHECK(maf_cli({"bench", (dir.path / "nope").string()}).code == 2);
  }
}

TEST_CASE("csv quoting") {
  CHECK(csv_line({"a", "b"}) == "a,b\r\n");
  CHECK(csv_line({"x,y", "say \"hi\"", ""}) == "\"x,y\",\"say \"\"hi\"\"\",\r\n");
  CHECK(csv_line({"two\nlines"}) == "\"two\nlines\"\r\n");
}
