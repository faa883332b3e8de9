#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "schema_check.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

// Runs the CLI with stderr folded into the captured output when `merge` is set.
Run run(const std::string& args, bool merge = false, const std::string& env = "") {
  const std::string cmd =
      (env.empty() ? "" : "env " + env + " ") + COHESION_CLI + " " + args + (merge ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int st = ::pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  auto d = fs::temp_directory_path() / "cohesion_cli_tests";
  fs::create_directories(d);
  return d / name;
}

std::string write_file(const std::string& name, const std::string& body) {
  auto p = scratch(name);
  std::ofstream(p) << body;
  return p.string();
}

std::string synergy_csv() {
  return write_file("synergy.csv", "x0,x1,x2,x3,p\n0,0,0,0,0.25\n0,1,1,0,0.25\n1,0,1,1,0.25\n1,1,0,1,0.25\n");
}

void check_schema(const std::string& name, const json& doc) {
  std::ifstream in(fs::path(COHESION_SCHEMA_DIR) / (name + ".schema.json"));
  REQUIRE(in.good());
  const json schema = json::parse(in);
  std::vector<std::string> errors;
  schema_check::validate(schema, doc, name, errors);
  for (const auto& e : errors) MESSAGE(e);
  CHECK(errors.empty());
}

json run_json(const std::string& args, const std::string& schema) {
  auto r = run("--json " + args);
  REQUIRE(r.status == 0);
  auto doc = json::parse(r.out);
  check_schema(schema, doc);
  return doc;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("cohesion profile in bits") {
  auto r = run("cohesion " + synergy_csv() + " --base 2");
  REQUIRE(r.status == 0);
  CHECK(r.out.find("C2 = 5 (base 2)") != std::string::npos);
  CHECK(r.out.find("# config:") == 0);
  auto doc = run_json("cohesion " + synergy_csv() + " --base 2", "cohesion");
  CHECK(doc["values"][1].get<double>() == doctest::Approx(5.0));
  CHECK(doc["all_satisfied"] == true);
}

TEST_CASE("malformed CSV fails with the line number") {
  auto bad = write_file("bad.csv", "x0,x1,p\n0,0,0.5\n1,q,0.5\n");
  auto r = run("cohesion " + bad, true);
  CHECK(r.status == 1);
  CHECK(r.out.find("error: parse: ") == 0);
  CHECK(r.out.find("bad.csv:3") != std::string::npos);
  CHECK(r.out.find('\n') == r.out.size() - 1);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("").status == 2);
  CHECK(run("bogus").status == 2);
  CHECK(run("maxent " + synergy_csv()).status == 2);
  CHECK(run("--help").status == 0);
}

TEST_CASE("field show 2 2") {
  auto r = run("field show 2 2");
  REQUIRE(r.status == 0);
  auto doc = run_json("field show 2 2", "field_show");
  CHECK(doc["addition"] == json::parse("[[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]]"));
  CHECK(doc["multiplication"] == json::parse("[[0,0,0,0],[0,1,2,3],[0,2,3,1],[0,3,1,2]]"));
  CHECK(doc["modulus_text"] == "z^2+z+1");
  CHECK(run("field show 4 1", true).out.find("error: invalid_argument") == 0);
}

TEST_CASE("maxent") {
  auto doc = run_json("maxent " + synergy_csv() + " --k 2", "maxent");
  CHECK(doc["divergence_bits"].get<double>() == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(doc["eq4_rhs"].get<double>() == doctest::Approx(5.0 / 3.0));
  CHECK(doc["eq4_satisfied"] == true);
}

TEST_CASE("code rs") {
  auto doc = run_json("code rs --p 2 --m 2 --k 2 --codewords", "code_rs");
  CHECK(doc["d"] == 3);
  CHECK(doc["is_mds"] == true);
  CHECK(doc["codewords"].size() == 16);
  CHECK(doc["codewords"][5] == json::parse("[1,0,3,2]"));
}

TEST_CASE("matroid subcommands") {
  auto no = run_json("matroid uniform-rep --k 2 --n 4 --p 2", "matroid_uniform_rep");
  CHECK(no["outcome"] == "not_representable");
  auto yes = run_json("matroid uniform-rep --k 2 --n 4 --p 3", "matroid_uniform_rep");
  CHECK(yes["outcome"] == "representable");
  auto fd = run_json("matroid from-dist " + synergy_csv(), "matroid_from_dist");
  CHECK(fd["uniform"] == false);
  CHECK(fd["rank"] == 2);
}

TEST_CASE("maximizer round trip") {
  auto text = run("maximizer 4 2");
  REQUIRE(text.status == 0);
  auto path = write_file("max42.csv", text.out);
  auto back = run_json("cohesion " + path, "cohesion");
  auto cert = run_json("maximizer 4 2", "maximizer");
  CHECK(back["values_base_q"][1].get<double>() == cert["certificate"]["value"].get<double>());
  CHECK(cert["certificate"]["meets_bound"] == true);
  CHECK(cert["distribution"]["atoms"].size() == 16);
  auto fd = run_json("matroid from-dist " + path, "matroid_from_dist");
  CHECK(fd["uniform"] == true);
}

TEST_CASE("scan writes files and reports the seed") {
  auto dir = scratch("scan_random");
  fs::remove_all(dir);
  auto doc = run_json("scan --samples 500 --measures c1,c2,c3,d2 --out " + dir.string(), "scan");
  CHECK(doc["points"] == 500);
  CHECK(doc["violations"]["total"] == 0);
  CHECK(doc["config"]["seed"] == 20240101);
  CHECK(doc["files"].size() == 4);
  CHECK(fs::exists(dir / "divergence_overlay.csv"));

  auto again = run_json("scan --samples 500 --measures c1,c2,c3,d2 --serial --out " + dir.string(), "scan");
  CHECK(again["best"] == doc["best"]);

  auto sdir = scratch("scan_search");
  fs::remove_all(sdir);
  auto search = run_json("scan --mode search --measures c2 --restarts 4 --out " + sdir.string(), "scan");
  CHECK(search["best_value"].get<double>() <= 6.0);
  CHECK(fs::exists(sdir / "best.csv"));

  CHECK(run("scan --mode grid --resolution 12 --out " + dir.string(), true).out.find("error: size_limit") == 0);
  CHECK(run("scan --measures c9 --out " + dir.string()).status == 1);
}

TEST_CASE("thread cap is echoed") {
  auto r = run("--json field show 2 1", false, "COHESION_THREADS=1");
  REQUIRE(r.status == 0);
  auto doc = json::parse(r.out);
  CHECK(doc["config"]["threads"] == 1);
  CHECK(doc["config"]["command"] == "field");
}

}  // TEST_SUITE
