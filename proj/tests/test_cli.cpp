#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "hespeed/cli.hpp"

using namespace hespeed;
namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Run {
  int status;
  std::string out, err;

  std::vector<Json> lines() const {
    std::vector<Json> v;
    std::istringstream in(out);
    for (std::string l; std::getline(in, l);) v.push_back(Json::parse(l));
    return v;
  }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("hespeed-cli-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<long long> column(const Run& r, const char* key) {
  std::vector<long long> v;
  for (const auto& j : r.lines()) v.push_back(j[key].get<long long>());
  return v;
}

}  // namespace

TEST_CASE("speed") {
  auto q = run({"speed", "poset", "Q", "6"});
  REQUIRE(q.status == 0);
  CHECK(column(q, "unlabelled") == std::vector<long long>{1, 2, 2, 3, 3, 4});
  CHECK(column(q, "n") == std::vector<long long>{1, 2, 3, 4, 5, 6});

  auto rbip = run({"speed", "poset", "Rbip", "5"});
  CHECK(column(rbip, "labelled") == std::vector<long long>{1, 3, 7, 15, 31});

  auto p1 = run({"speed", "tournament", "P1", "7"});
  CHECK(column(p1, "unlabelled") == std::vector<long long>{1, 1, 2, 2, 3, 4, 5});
}

TEST_CASE("labelled values are exact integers") {
  auto r = run({"speed", "tournament", "all", "8"});
  REQUIRE(r.status == 0);
  auto last = r.lines().back();
  CHECK(last["labelled"].is_number_integer());
  CHECK(last["labelled"].get<long long>() == 268435456LL);
}

TEST_CASE("family build and member") {
  auto g = run({"family", "build", "G1", "4"});
  REQUIRE(g.status == 0);
  CHECK(g.out.starts_with("D9:"));
  auto t = run({"family", "build", "T", "3"});
  CHECK(t.out == "D3:54\n");
  auto m = run({"family", "member", "P1", "D3:64"});
  CHECK(m.lines().front()["member"] == true);
  auto q = run({"family", "member", "QK(2)", "D3:64"});
  CHECK(q.status == 0);
  CHECK(q.lines().front()["member"] == false);
}

TEST_CASE("canon agrees across relabellings") {
  auto a = run({"canon", "D3:64"});
  auto b = run({"canon", "D3:98"});
  REQUIRE(a.status == 0);
  REQUIRE(b.status == 0);
  CHECK(a.out.substr(0, a.out.find('\n')) == b.out.substr(0, b.out.find('\n')));
  CHECK(a.out.ends_with("\n3\n"));
}

TEST_CASE("enumerate and patterns") {
  auto e = run({"enumerate", "tournament", "4"});
  REQUIRE(e.status == 0);
  CHECK(e.lines().size() == 4);
  auto p = run({"patterns", "tournament", "all", "2"});
  REQUIRE(p.status == 0);
  CHECK(p.out == "[1,-1]\n");
}

TEST_CASE("forbid and closure files") {
  auto dir = scratch("files");
  {
    std::ofstream f(dir / "c2.txt");
    f << "# a 2-chain\n\nD2:4\n";
  }
  auto r = run({"speed", "poset", "forbid:" + (dir / "c2.txt").string(), "5"});
  REQUIRE(r.status == 0);
  CHECK(column(r, "unlabelled") == std::vector<long long>(5, 1));
  auto c = run({"speed", "poset", "closure:" + (dir / "c2.txt").string(), "2"});
  CHECK(column(c, "unlabelled") == std::vector<long long>{1, 1});
  fs::remove_all(dir);
}

TEST_CASE("check") {
  auto t3 = run({"check", "thm3", "P1", "4", "8"});
  REQUIRE(t3.status == 0);
  auto lines = t3.lines();
  REQUIRE(!lines.empty());
  for (const auto& j : lines) {
    CHECK(j["pass"] == true);
    CHECK(j["range"] == Json::array({4, 8}));
    CHECK(j.contains("theorem"));
    CHECK(j.contains("property"));
    CHECK(j.contains("witness"));
  }

  auto t2 = run({"check", "thm2", "QK(2)", "1", "8"});
  REQUIRE(t2.status == 0);
  CHECK(t2.lines().front()["regime"] == "Polynomial");
  CHECK(t2.lines().front()["coefficients"] == Json::array({1, 1, 1}));

  auto obs = run({"check", "obs1", "2", "3"});
  REQUIRE(obs.status == 0);
  CHECK(column(obs, "least_order") == std::vector<long long>{2, 4});
}

TEST_CASE("exit codes") {
  CHECK(run({}).status == 2);
  CHECK(run({"frobnicate"}).status == 2);
  CHECK(run({"speed", "poset", "Q"}).status == 2);
  CHECK(run({"speed", "lattice", "Q", "3"}).status == 2);
  CHECK(run({"speed", "poset", "Q", "x"}).status == 2);
  CHECK(run({"check", "thm9", "Q", "1", "6"}).status == 2);

  auto bad = run({"canon", "D3:6x"});
  CHECK(bad.status == 1);
  CHECK(bad.err.starts_with("error: ParseError"));
  CHECK(run({"speed", "digraph", "all", "11"}).status == 1);
  CHECK(run({"speed", "poset", "NoSuchFamily", "3"}).status == 1);
  CHECK(run({"speed", "poset", "forbid:/nonexistent/file", "3"}).status == 1);
  CHECK(run({"family", "build", "Cochain", "1", "3"}).status == 1);
}

TEST_CASE("output is independent of cache state and worker count") {
  auto dir = scratch("cache");
  const std::vector<std::string> cmd{"speed", "tournament", "P3", "8"};
  auto with = [&](std::vector<std::string> prefix) {
    prefix.insert(prefix.end(), cmd.begin(), cmd.end());
    return run(prefix);
  };
  auto plain = with({});
  auto cold = with({"--cache", dir.string()});
  auto warm = with({"--cache", dir.string()});
  auto jobs = with({"--cache", dir.string(), "--jobs", "4"});
  auto jobs_nocache = with({"--jobs", "3"});
  REQUIRE(plain.status == 0);
  CHECK(!fs::is_empty(dir));
  CHECK(cold.out == plain.out);
  CHECK(warm.out == plain.out);
  CHECK(jobs.out == plain.out);
  CHECK(jobs_nocache.out == plain.out);

  auto e1 = run({"--cache", dir.string(), "enumerate", "poset", "6"});
  auto e2 = run({"--cache", dir.string(), "enumerate", "poset", "6"});
  auto e3 = run({"--jobs", "4", "enumerate", "poset", "6"});
  CHECK(e1.out == e2.out);
  CHECK(e1.out == e3.out);
  fs::remove_all(dir);
}
