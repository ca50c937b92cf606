#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "psl2/cli.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "psl2");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = psl2::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("invariants") {
  auto r = run({"invariants", "37"});
  CHECK(r.code == 0);
  CHECK(r.out.find("i=19 c=21 s=5 n=16") != std::string::npos);

  r = run({"invariants", "53", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out == "53,4,4,0,1,0,0,17,18,6,12\n");

  r = run({"invariants", "4"});
  CHECK(r.code == 2);
  CHECK(r.err.find("prime") != std::string::npos);

  r = run({"invariants", "3", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(r.err.find("notice") != std::string::npos);
  const json j = json::parse(r.out);
  CHECK(j["i"] == 3);
  CHECK(j["n"] == 2);
}

TEST_CASE("census") {
  auto r = run({"census", "13", "--oracle", "--format", "json"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["diff"].empty());
  CHECK(j["oracle"]["c"] == 14);

  r = run({"census", "37", "--format", "json"});
  CHECK(r.code == 0);
  j = json::parse(r.out);
  int self_norm = 0;
  for (const auto& e : j["entries"]) self_norm += e["self_normalising"].get<bool>();
  CHECK(self_norm == 5);

  CHECK(run({"census", "23", "--oracle"}).code == 2);
  CHECK(run({"census", "15"}).code == 2);

  r = run({"census", "7", "--oracle", "--lattice", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["lattice"].size() == 15);
}

TEST_CASE("verify-table") {
  auto r = run({"verify-table"});
  CHECK(r.code == 0);
  CHECK(r.out.find("known-issue") != std::string::npos);
  CHECK(run({"verify-table", "--strict"}).code == 1);
  r = run({"verify-table", "--oracle-rows", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out).is_object());
}

TEST_CASE("search") {
  auto r = run({"search", "b", "--t-max", "100", "--format", "json"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["q_count"] == 6);
  bool found = false;
  for (const auto& h : j["first_hits"])
    if (h["p"] == 43) found = (h["t"] == 3 && h["s"] == 11 && h["r"] == 7);
  CHECK(found);

  CHECK(run({"search", "a", "--t-max", "1e4", "--format", "json"}).out.find("\"q_count\":64") != std::string::npos);
  CHECK(run({"search", "x", "--t-max", "10"}).code == 2);
  CHECK(run({"search", "a", "--t-max", "ten"}).code == 2);
  CHECK(run({"search", "a"}).code == 2);
  CHECK(run({"search", "a", "--t-max", "0"}).code == 2);
}

TEST_CASE("environment overrides") {
  ::setenv("PSL2_FORMAT", "json", 1);
  auto r = run({"invariants", "5"});
  ::unsetenv("PSL2_FORMAT");
  CHECK(json::parse(r.out)["c"] == 7);

  ::setenv("PSL2_T_MAX", "1000", 1);
  r = run({"search", "c", "--format", "json"});
  ::unsetenv("PSL2_T_MAX");
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["q_count"] == 16);
}

TEST_CASE("bhc") {
  auto r = run({"bhc", "a", "--x", "1e6", "--trunc", "1e5", "--format", "json"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  for (const char* key : {"family", "x", "a", "P", "C", "integral", "E", "tail_bound"}) CHECK(j.contains(key));
  CHECK(j["P"] == 100000);

  r = run({"bhc", "--family", "[[0,1],[2,1]]", "--x", "1e6", "--trunc", "1e5", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["C"].get<double>() == doctest::Approx(1.3203236).epsilon(1e-5));

  CHECK(run({"bhc", "--family", "[[0,1],[1,1]]"}).code == 2);
  CHECK(run({"bhc", "--family", "nonsense"}).code == 2);
  CHECK(run({"bhc"}).code == 2);

  // --q-file from a matching search.
  const auto path = std::filesystem::temp_directory_path() / "psl2_cli_test_scan.json";
  {
    std::ofstream f(path);
    f << run({"search", "a", "--t-max", "1000000", "--format", "json"}).out;
  }
  r = run({"bhc", "a", "--x", "1e6", "--trunc", "1e5", "--q-file", path.string(), "--format", "json"});
  CHECK(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["q"] == 2064);
  CHECK(std::abs(j["rel_error"].get<double>()) < 0.05);
  CHECK(run({"bhc", "b", "--x", "1e6", "--trunc", "1e5", "--q-file", path.string()}).code == 2);
  CHECK(run({"bhc", "a", "--x", "1e7", "--trunc", "1e5", "--q-file", path.string()}).code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("hb") {
  auto r = run({"hb", "--limit", "1000"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("p,omega_minus,omega_plus,i,c,s,n\n5,2,2,7,7,3,4\n149,3,4,", 0) == 0);
  r = run({"hb", "--limit", "1e5", "--format", "json"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["within_bounds"] == true);
  CHECK(j["candidates"].size() == j["count"]);
  CHECK(run({"hb", "--limit", "10"}).code == 2);
}

TEST_CASE("usage") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"invariants", "37", "--format", "xml"}).code == 2);
}

}
