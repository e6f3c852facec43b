#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <unistd.h>

#include "cli.hpp"
#include "picg/csv.hpp"
#include "picg/presets.hpp"
#include "picg/rules.hpp"

namespace fs = std::filesystem;
using namespace picg;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("picg_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

const fs::path kData = PICG_TEST_DATA_DIR;

}  // namespace

TEST_CASE("grow writes an edge list with m = t for the connected preset") {
  const Result r = run({"grow", "--model", "preset:connected:0.5", "--steps", "10", "--seed", "7", "--format", "edgelist"});
  CHECK(r.code == 0);
  CHECK(lines(r.out) == 11);
  CHECK(r.out.rfind("u,v\n", 0) == 0);
}

TEST_CASE("grow output re-imports to the same labelled multigraph") {
  TempDir tmp;
  REQUIRE(run({"grow", "--model", "preset:two_edge_connected:0.3:0.3", "--steps", "500", "--seed", "11", "--out",
               tmp / "g.csv", "--trace", tmp / "t.csv"})
              .code == 0);
  const GrowResult direct =
      grow(preset(PresetKind::two_edge_connected, PresetParams::two_edge_connected(0.3, 0.3)), StopCondition::after_steps(500), 11);
  std::ifstream in(tmp / "g.csv");
  CHECK(read_edge_list_csv(in, direct.graph.vertex_count()) == direct.graph);
  CHECK(lines(slurp(tmp / "t.csv")) == 501);
}

TEST_CASE("identical invocations give byte-identical files") {
  TempDir tmp;
  for (const char* name : {"a", "b"}) {
    REQUIRE(run({"grow", "--model", "preset:pa", "--vertices", "300", "--seed", "5", "--out", tmp / (std::string(name) + ".net"),
                 "--format", "pajek"})
                .code == 0);
  }
  CHECK(slurp(tmp / "a.net") == slurp(tmp / "b.net"));
  CHECK(slurp(tmp / "a.net").rfind("*Vertices 300\n", 0) == 0);

  REQUIRE(run({"ensemble", "--model", "preset:connected:0.5", "--runs", "4", "--vertices", "400", "--seed", "3", "--report",
               tmp / "e1.csv"})
              .code == 0);
  REQUIRE(run({"ensemble", "--model", "preset:connected:0.5", "--runs", "4", "--vertices", "400", "--seed", "3", "--report",
               tmp / "e2.csv", "--jobs", "3", "--check-invariants", "--check-period", "10"})
              .code == 0);
  CHECK(slurp(tmp / "e1.csv") == slurp(tmp / "e2.csv"));
  CHECK(slurp(tmp / "e1.csv").rfind("degree,min,q1,median,q3,max,mean\n", 0) == 0);
}

TEST_CASE("the seed falls back to PICG_SEED and the flag wins") {
  ::setenv("PICG_SEED", "7", 1);
  const Result env = run({"grow", "--model", "preset:connected:0.5", "--steps", "30"});
  const Result flag = run({"grow", "--model", "preset:connected:0.5", "--steps", "30", "--seed", "7"});
  const Result other = run({"grow", "--model", "preset:connected:0.5", "--steps", "30", "--seed", "8"});
  CHECK(env.code == 0);
  CHECK(env.out == flag.out);
  CHECK(other.out != flag.out);
  ::setenv("PICG_SEED", "not-a-number", 1);
  CHECK(run({"grow", "--model", "preset:connected:0.5", "--steps", "3"}).code == 2);
  ::unsetenv("PICG_SEED");
  const Result missing = run({"grow", "--model", "preset:connected:0.5", "--steps", "3"});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("seed") != std::string::npos);
}

TEST_CASE("flag errors exit with status 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frob"}).code == 2);
  CHECK(run({"grow", "--model", "preset:connected:0.5", "--seed", "1"}).code == 2);
  CHECK(run({"grow", "--model", "preset:connected:0.5", "--steps", "3", "--vertices", "5", "--seed", "1"}).code == 2);
  CHECK(run({"grow", "--model", "preset:nope", "--steps", "3", "--seed", "1"}).code == 2);
  CHECK(run({"grow", "--model", "preset:connected:0.5", "--steps", "3", "--seed", "1", "--format", "gml"}).code == 2);
  CHECK(run({"grow", "--model", "preset:connected:0.5", "--steps", "x", "--seed", "1"}).code == 2);
  CHECK(run({"ensemble", "--model", "preset:pa", "--runs", "0", "--steps", "3", "--seed", "1", "--report", "-"}).code == 2);
  CHECK(run({"predict", "--model", "preset:pa", "--what", "everything"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("runtime and validation errors exit with status 1") {
  CHECK(run({"grow", "--model", "preset:connected:1.5", "--steps", "3", "--seed", "1"}).code == 1);
  CHECK(run({"grow", "--model", (kData / "no_such_file.picg").string(), "--steps", "3", "--seed", "1"}).code == 1);
  CHECK(run({"predict", "--model", "preset:pa", "--what", "degree"}).code == 1);
  const Result bad = run({"validate", "--model", (kData / "models" / "weights_0_9.picg").string()});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("weights_0_9.picg:5:1: validation error: rule weights sum to 0.9") != std::string::npos);
  CHECK(run({"validate", "--model", (kData / "models" / "connected.picg").string()}).code == 0);
}

TEST_CASE("every malformed model names the expected line") {
  std::size_t files = 0;
  const std::regex expect("# expect-line: ([0-9]+)");
  for (const auto& entry : fs::directory_iterator(kData / "malformed")) {
    const std::string text = slurp(entry.path());
    std::smatch m;
    REQUIRE(std::regex_search(text, m, expect));
    const std::string want = entry.path().string() + ":" + m[1].str() + ":";
    const Result r = run({"validate", "--model", entry.path().string()});
    INFO(entry.path().filename().string() << "\n" << r.err);
    CHECK(r.code == 1);
    CHECK(r.err.rfind(want, 0) == 0);
    ++files;
  }
  CHECK(files >= 20);
}

TEST_CASE("file models drive growth") {
  const Result r = run({"grow", "--model", (kData / "models" / "simple_cycle.picg").string(), "--steps", "200", "--seed", "2"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  const MultiGraph g = read_edge_list_csv(in);
  CHECK(g.adjacent_pair_count() == g.edge_count());
  CHECK(check_property(g, GraphProperty::two_edge_connected));
}

TEST_CASE("predict tables") {
  const Result deg = run({"predict", "--model", "preset:two_vertex_connected:0.5", "--what", "degree", "--dmax", "5"});
  REQUIRE(deg.code == 0);
  std::istringstream din(deg.out);
  const CsvTable dt = read_csv(din);
  CHECK(dt.header == std::vector<std::string>{"d", "paper", "corrected", "series"});
  REQUIRE(dt.rows.size() == 6);
  CHECK(std::stod(dt.rows[2][dt.column("paper")]) == 0.5);
  CHECK(std::stod(dt.rows[2][dt.column("corrected")]) == doctest::Approx(1.0 / 3));

  const Result order = run({"predict", "--model", "preset:two_edge_connected:1/3:1/3", "--what", "order", "--t", "2"});
  REQUIRE(order.code == 0);
  std::istringstream oin(order.out);
  const CsvTable ot = read_csv(oin);
  CHECK(ot.header == std::vector<std::string>{"n", "paper", "corrected", "exact"});
  const auto& last = ot.rows.back();
  CHECK(last[0] == "7");
  CHECK(std::stod(last[1]) == 0.0);
  CHECK(std::stod(last[2]) == doctest::Approx(1.0 / 9));
  CHECK(std::stod(last[3]) == doctest::Approx(1.0 / 9));

  CHECK(run({"predict", "--model", "preset:connected:0.5", "--what", "rates"}).out == "dn,dm\n0.5,1\n");
  CHECK(run({"predict", "--model", "preset:connected:0.5", "--what", "size", "--t", "4"}).out == "m,paper,exact\n4,1,1\n");
  const Result file_order =
      run({"predict", "--model", (kData / "models" / "connected.picg").string(), "--what", "order", "--t", "2"});
  CHECK(file_order.out == "n,exact\n2,0.5\n3,0.5\n");
}

TEST_CASE("compare an ensemble report against predictor columns") {
  TempDir tmp;
  REQUIRE(run({"ensemble", "--model", "preset:connected:0.5", "--runs", "3", "--vertices", "2000", "--seed", "9", "--report",
               tmp / "rep.csv", "--comparison", tmp / "cmp.csv"})
              .code == 0);
  REQUIRE(run({"predict", "--model", "preset:connected:0.5", "--what", "degree", "--dmax", "80", "--out", tmp / "pred.csv"}).code ==
          0);
  const Result r = run({"compare", "--empirical", tmp / "rep.csv", "--predicted", tmp / "pred.csv"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  const CsvTable t = read_csv(in);
  CHECK(t.header == std::vector<std::string>{"predictor", "tv", "max_abs_dev", "mean_emp", "mean_pred"});
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rows[0][0] == "paper");
  CHECK(t.rows[1][0] == "corrected");
  CHECK(t.rows[2][0] == "series");
  CHECK(std::stod(t.rows[0][1]) == doctest::Approx(std::stod(t.rows[2][1])));  // series column is the paper law again

  std::istringstream cin(slurp(tmp / "cmp.csv"));
  const CsvTable c = read_csv(cin);
  REQUIRE(c.rows.size() == 2);
  // Both routes see the same empirical mean.
  CHECK(std::stod(c.rows[0][3]) == doctest::Approx(std::stod(t.rows[0][3])));

  CHECK(run({"compare", "--empirical", tmp / "missing.csv", "--predicted", tmp / "pred.csv"}).code == 1);
}
