#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include <nlohmann/json.hpp>

#include "ccon/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = ccon::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("ccon_cli_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

json first_json_line(const std::string& text) {
  REQUIRE(text.rfind("# {", 0) == 0);
  return json::parse(text.substr(2, text.find('\n') - 2));
}

json meta_of(const std::string& text) {
  if (text.rfind("# ", 0) == 0) return first_json_line(text);
  return json::parse(text)["meta"];
}

// The invocations exercised for determinism and self-description.
std::vector<std::vector<std::string>> invocations(const TempDir& dir) {
  const std::string g = dir / "g.edges";
  return {
      {"generate", "--er", "50", "80", "--seed", "3"},
      {"generate", "--sf", "60", "200", "--gamma", "2.8", "--seed", "3", "--out-base", "1"},
      {"stats", "--input", g},
      {"drivers", "--input", g, "--seed", "4", "--sample", "3"},
      {"cactus", "--sf", "40", "120", "--seed", "4"},
      {"estimate", "--input", g, "--seed", "5", "--delta", "30", "--t-min", "30", "--histograms", "10",
       "--compare-rewired", "5", "--sidecar", dir / "side.json"},
      {"dim", "--input", g, "--drivers", "0,3,7", "--seed", "1"},
      {"dim", "--er", "10", "12", "--drivers", "0,3", "--method", "exact"},
      {"rank", "--input", g, "--scheme", "contribution-desc", "--seed", "2", "--delta", "30"},
      {"rank", "--input", g, "--scheme", "random", "--seed", "2"},
      {"curve", "--input", g, "--seed", "2", "--delta", "30", "--grid-density", "5"},
      {"ensemble", "--er", "60", "90", "--runs", "3", "--grid-density", "5", "--delta", "30", "--seed", "9"},
      {"randomize", "--input", g, "--swap-factor", "4", "--seed", "6"},
  };
}

}  // namespace

TEST_CASE("exit codes") {
  TempDir dir;
  spit(dir / "bad.edges", "0 1\n1 x\n");
  spit(dir / "loop.edges", "0 1\n2 2\n");
  spit(dir / "g.edges", "0 1\n1 2\n");

  CHECK(run({}).code == ccon::cli::kUsage);
  CHECK(run({"frobnicate"}).code == ccon::cli::kUnknownSubcommand);
  CHECK(run({"stats", "--input", dir / "g.edges", "--er", "5", "5"}).code == ccon::cli::kConflictingFlags);
  CHECK(run({"stats", "--er", "5", "5", "--sf", "5", "5"}).code == ccon::cli::kConflictingFlags);
  CHECK(run({"stats"}).code == ccon::cli::kUsage);
  CHECK(run({"stats", "--er", "5"}).code == ccon::cli::kUsage);
  CHECK(run({"stats", "--bogus", "1", "--er", "5", "5"}).code == ccon::cli::kUsage);
  CHECK(run({"dim", "--input", dir / "g.edges"}).code == ccon::cli::kUsage);
  CHECK(run({"stats", "--input", dir / "missing.edges"}).code == ccon::cli::kIo);
  CHECK(run({"stats", "--input", dir / "g.edges", "--out", dir / "no/such/dir/x.csv"}).code == ccon::cli::kIo);
  CHECK(run({"stats", "--input", dir / "g.edges", "--config", dir / "none.cfg"}).code == ccon::cli::kIo);
  CHECK(run({"stats", "--er", "5", "50"}).code == ccon::cli::kInvalidParameter);
  CHECK(run({"dim", "--input", dir / "g.edges", "--drivers", "7"}).code == ccon::cli::kInvalidParameter);
  CHECK(run({"curve", "--input", dir / "g.edges", "--grid", "0.9"}).code == ccon::cli::kInvalidParameter);
  CHECK(run({"ensemble", "--er", "30", "40", "--runs", "3", "--t-min", "2", "--t-max", "2"}).code ==
        ccon::cli::kEnsembleAborted);

  const auto bad = run({"stats", "--input", dir / "bad.edges"});
  CHECK(bad.code == ccon::cli::kParse);
  const json err = json::parse(bad.err);
  CHECK(err["line"] == 2);
  CHECK(err["exit_code"] == ccon::cli::kParse);
  CHECK(err["error"] == "parse:malformed");
  CHECK(bad.out.empty());

  const auto loop = run({"stats", "--input", dir / "loop.edges"});
  CHECK(loop.code == ccon::cli::kParse);
  CHECK(json::parse(loop.err)["error"] == "parse:self-loop");

  const auto help = run({"estimate", "--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("--t-min") != std::string::npos);
}

TEST_CASE("estimate output shape") {
  TempDir dir;
  const auto r = run({"estimate", "--er", "1000", "1500", "--seed", "7", "--out", dir / "c.csv"});
  REQUIRE(r.code == 0);
  const std::string csv = slurp(dir / "c.csv");
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line.rfind("# ", 0) == 0);
  std::getline(lines, line);
  CHECK(line == "node,k,r,c,mean_territory");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 1000);
  const json side = json::parse(slurp(dir / "c.csv.json"));
  CHECK(side["converged"] == true);
  CHECK(side["trace"].size() == side["samples"].get<std::size_t>());
  CHECK(side["meta"]["options"]["seed"] == "7");
  CHECK_FALSE(fs::exists(dir / "c.csv.tmp"));
}

TEST_CASE("dim and drivers output shape") {
  TempDir dir;
  spit(dir / "g.edges", "0 1\n1 2\n2 3\n0 4\n");
  const auto d = run({"dim", "--input", dir / "g.edges", "--drivers", "0,4", "--seed", "1"});
  REQUIRE(d.code == 0);
  const json j = json::parse(d.out);
  CHECK(j["n_b_abs"] == 5);
  CHECK(j["n_b"] == 1.0);
  CHECK(j["reachable_count"] == 5);

  spit(dir / "drivers.txt", "# chosen\n0\n4\n");
  const auto f = run({"dim", "--input", dir / "g.edges", "--drivers", dir / "drivers.txt"});
  CHECK(json::parse(f.out)["n_b_abs"] == 5);

  const auto dr = run({"drivers", "--input", dir / "g.edges"});
  REQUIRE(dr.code == 0);
  const json meta = first_json_line(dr.out);
  CHECK(meta["info"]["matching_size"] == 3);
  CHECK(meta["info"]["n_d"] == 0.4);
  CHECK(dr.out.find("\nnode_id\n") != std::string::npos);

  const auto st = run({"stats", "--input", dir / "g.edges"});
  CHECK(st.out.find("\nn,l,k,r,c\n5,4,1.6,") != std::string::npos);
}

TEST_CASE("rank reads estimates written by estimate") {
  TempDir dir;
  REQUIRE(run({"generate", "--er", "80", "120", "--seed", "1", "--out", dir / "g.edges"}).code == 0);
  REQUIRE(run({"estimate", "--input", dir / "g.edges", "--seed", "3", "--out", dir / "e.csv"}).code == 0);
  const auto direct = run({"rank", "--input", dir / "g.edges", "--seed", "3", "--scheme", "C"});
  const auto loaded =
      run({"rank", "--input", dir / "g.edges", "--seed", "3", "--scheme", "C", "--estimates", dir / "e.csv"});
  REQUIRE(direct.code == 0);
  REQUIRE(loaded.code == 0);
  auto payload = [](const std::string& s) { return s.substr(s.find('\n') + 1); };
  CHECK(payload(direct.out) == payload(loaded.out));

  spit(dir / "short.csv", "node,k,r,c,mean_territory\n0,1,1,1,1\n");
  CHECK(run({"rank", "--input", dir / "g.edges", "--estimates", dir / "short.csv"}).code == ccon::cli::kParse);
}

TEST_CASE("every subcommand is deterministic and independent of --jobs") {
  TempDir dir;
  REQUIRE(run({"generate", "--er", "90", "140", "--seed", "1", "--out", dir / "g.edges"}).code == 0);
  const std::string before = slurp(dir / "g.edges");
  for (auto args : invocations(dir)) {
    INFO(args[0]);
    auto with_jobs = [&](const std::string& jobs, const std::string& tag) {
      auto a = args;
      a.insert(a.end(), {"--jobs", jobs, "--out", dir / ("out_" + tag)});
      const auto r = run(a);
      REQUIRE(r.code == 0);
      std::string side;
      if (args[0] == "estimate") side = slurp(dir / "side.json");
      return slurp(dir / ("out_" + tag)) + r.out + side;
    };
    const std::string one = with_jobs("1", "a");
    CHECK(with_jobs("1", "b") == one);
    CHECK(with_jobs("8", "c") == one);
  }
  CHECK(slurp(dir / "g.edges") == before);
}

TEST_CASE("outputs describe how to reproduce them") {
  TempDir dir;
  REQUIRE(run({"generate", "--er", "90", "140", "--seed", "1", "--out", dir / "g.edges"}).code == 0);
  for (const auto& args : invocations(dir)) {
    INFO(args[0]);
    const auto first = run(args);
    REQUIRE(first.code == 0);
    const json meta = meta_of(first.out);
    CHECK(meta["subcommand"] == args[0]);
    std::string config;
    for (const auto& [key, value] : meta["options"].items()) config += key + " = " + value.get<std::string>() + "\n";
    spit(dir / "replay.cfg", config);
    std::vector<std::string> replay{args[0], "--config", dir / "replay.cfg"};
    if (args[0] == "estimate") replay.insert(replay.end(), {"--sidecar", dir / "side.json"});
    const auto second = run(replay);
    REQUIRE(second.code == 0);
    CHECK(second.out == first.out);
  }
}

TEST_CASE("flags beat config and environment") {
  TempDir dir;
  spit(dir / "a.cfg", "# settings\ner = 40 60\nseed = 5\n");
  const auto from_config = run({"drivers", "--config", dir / "a.cfg"});
  REQUIRE(from_config.code == 0);
  CHECK(first_json_line(from_config.out)["options"]["seed"] == "5");

  const auto overridden = run({"drivers", "--config", dir / "a.cfg", "--seed", "6"});
  CHECK(first_json_line(overridden.out)["options"]["seed"] == "6");

  ::setenv("CCON_SEED", "11", 1);
  const auto env = run({"drivers", "--er", "40", "60"});
  const auto env_flag = run({"drivers", "--er", "40", "60", "--seed", "12"});
  ::unsetenv("CCON_SEED");
  CHECK(first_json_line(env.out)["options"]["seed"] == "11");
  CHECK(first_json_line(env_flag.out)["options"]["seed"] == "12");
  CHECK(env.out == run({"drivers", "--er", "40", "60", "--seed", "11"}).out);

  spit(dir / "bad.cfg", "no equals sign\n");
  CHECK(run({"drivers", "--er", "40", "60", "--config", dir / "bad.cfg"}).code == ccon::cli::kParse);
}

TEST_CASE("generate output loads back") {
  TempDir dir;
  REQUIRE(run({"generate", "--er", "30", "0", "--out", dir / "e.edges"}).code == 0);
  const auto s = run({"stats", "--input", dir / "e.edges"});
  CHECK(s.out.find("\n30,0,0,") != std::string::npos);

  REQUIRE(run({"generate", "--sf", "50", "150", "--out-base", "1", "--out", dir / "s.edges"}).code == 0);
  const auto s1 = run({"stats", "--input", dir / "s.edges", "--index-base", "1"});
  CHECK(s1.out.find("\n50,150,6,") != std::string::npos);

  spit(dir / "p.net", "*Vertices 3\n*Arcs\n1 2\n");
  CHECK(run({"stats", "--input", dir / "p.net"}).out.find("\n3,1,") != std::string::npos);
  CHECK(run({"stats", "--input", dir / "p.net", "--format", "edgelist"}).code == ccon::cli::kParse);
}
