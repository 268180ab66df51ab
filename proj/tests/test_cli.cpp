#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "kcover/cli.hpp"
#include "kcover/json_io.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = kcover::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "kcover_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cover-ks then verify against gen-ks") {
  const fs::path dir = scratch();
  const std::string m = (dir / "d4.json").string(), c = (dir / "f2.json").string();
  CHECK(cli({"gen-ks", "--t", "2", "--out", m}).code == 0);
  CHECK(cli({"cover-ks", "--t", "2", "--family", "gradient", "--out", c}).code == 0);
  const Run v = cli({"verify", "--cover", c, "--matrix", m});
  CHECK(v.code == 0);
  CHECK(kcover::Json::parse(v.out)["ok"] == true);
  const std::string d8 = (dir / "d8.json").string();
  CHECK(cli({"gen-ks", "--t", "3", "--out", d8}).code == 0);
  const Run bad = cli({"verify", "--cover", c, "--matrix", d8});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("\"error\"") != std::string::npos);
}

TEST_CASE("verify reports a violation with exit 1") {
  const fs::path dir = scratch();
  const std::string m = (dir / "d4.json").string(), c = (dir / "g2.json").string();
  cli({"gen-ks", "--t", "2", "--out", m});
  cli({"cover-ks", "--t", "2", "--family", "column", "--out", c});
  kcover::Json j = kcover::read_json_file(c);
  j["rectangles"].erase(j["rectangles"].size() - 1);
  kcover::write_text_file(c, kcover::dump(j));
  const Run v = cli({"verify", "--cover", c, "--matrix", m});
  CHECK(v.code == 1);
  CHECK(kcover::Json::parse(v.out)["firstViolation"].is_object());
}

TEST_CASE("check-theorem exit codes") {
  const Run ok = cli({"check-theorem", "--ks-t", "15"});
  CHECK(ok.code == 0);
  const Run fail = cli({"check-theorem", "--ks-t", "16"});
  CHECK(fail.code == 1);
  CHECK(fail.err.find("condition fails") != std::string::npos);
  const fs::path dir = scratch();
  const std::string f = (dir / "f.json").string(), g = (dir / "g.json").string();
  cli({"cover-ks", "--t", "2", "--family", "gradient", "--out", f});
  cli({"cover-ks", "--t", "2", "--family", "column", "--out", g});
  CHECK(cli({"check-theorem", "--F", f, "--G", g}).code == 0);
}

TEST_CASE("analyze reports lambda of F2") {
  const fs::path dir = scratch();
  const std::string f = (dir / "f.json").string();
  cli({"cover-ks", "--t", "2", "--family", "gradient", "--out", f});
  const Run r = cli({"analyze", "--cover", f});
  REQUIRE(r.code == 0);
  const auto j = kcover::Json::parse(r.out);
  CHECK(j["lambda"].get<double>() == doctest::Approx(-0.305).epsilon(0.01));
  CHECK(j["compact"] == true);
  CHECK(j["oneSided"] == false);
  CHECK(j["w"] == 13);
  const Run g = cli({"analyze", "--ks-t", "2", "--family", "column"});
  REQUIRE(g.code == 0);
  const auto gj = kcover::Json::parse(g.out);
  CHECK(gj["oneSided"] == true);
  CHECK(gj["piTable"].size() == 7);
  CHECK(gj["alphas"].size() == 2);
}

TEST_CASE("synthesize writes a deterministic report and a sidecar") {
  const fs::path dir = scratch();
  const std::string r1 = (dir / "r1.json").string(), r2 = (dir / "r2.json").string();
  const std::string cov = (dir / "syn.json").string(), m = (dir / "d16.json").string();
  const std::vector<std::string> common{"synthesize", "--base-t", "2", "--n", "2", "--mode", "explicit"};
  auto a1 = common, a2 = common;
  a1.insert(a1.end(), {"--report", r1, "--cover-out", cov});
  a2.insert(a2.end(), {"--report", r2});
  REQUIRE(cli(a1).code == 0);
  REQUIRE(cli(a2).code == 0);
  CHECK(slurp(r1) == slurp(r2));
  CHECK(fs::exists(r1 + ".meta.json"));
  const auto rep = kcover::Json::parse(slurp(r1));
  CHECK(rep["final"]["count"] == 16);
  CHECK(rep["verification"]["ok"] == true);
  cli({"gen-ks", "--t", "4", "--out", m});
  CHECK(cli({"verify", "--cover", cov, "--matrix", m}).code == 0);
}

TEST_CASE("scan-ks, lower and eval-circuit") {
  const fs::path dir = scratch();
  const std::string csv = (dir / "scan.csv").string();
  REQUIRE(cli({"--workers", "2", "scan-ks", "--t-max", "18", "--out", csv}).code == 0);
  const std::string table = slurp(csv);
  CHECK(table.rfind("t,sigmaF,sigmaG,exponent,lambdaF,muG,applicable,reason", 0) == 0);
  const std::string c = (dir / "f.json").string(), circ = (dir / "circ.json").string();
  cli({"cover-ks", "--t", "2", "--out", c});
  REQUIRE(cli({"lower", "--cover", c, "--out", circ}).code == 0);
  const Run e = cli({"eval-circuit", "--circuit", circ, "--input", "1,0,0,0"});
  REQUIRE(e.code == 0);
  CHECK(kcover::Json::parse(e.out)["outputs"] == kcover::Json::array({1, 1, 1, 1}));
  CHECK(cli({"eval-circuit", "--circuit", circ, "--input", "1,x"}).code == 2);
}

TEST_CASE("usage errors exit 2") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"gen-ks"}).code == 2);
  CHECK(cli({"gen-ks", "--t", "2", "--bogus"}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"verify", "--cover", "/nonexistent.json", "--matrix", "/nonexistent.json"}).code == 2);
  const Run v = cli({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out.find(kcover::kSchemaVersion) != std::string::npos);
}
