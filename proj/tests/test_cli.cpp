#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "nilrigid/table.hpp"

using nilrigid::Json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = nilrigid::cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

const std::filesystem::path kData = NILRIGID_TEST_DATA;

}  // namespace

TEST_CASE("info on catalog names and files") {
  auto r = run({"info", "g_{5,3}"});
  CHECK(r.code == 0);
  CHECK(r.out.find("3-step nilpotent") != std::string::npos);
  CHECK(r.out.find("orbit dim 15") != std::string::npos);

  r = run({"info", "12346_E"});
  CHECK(r.out.find("6-dim, 5-step nilpotent") != std::string::npos);

  const auto dir = std::filesystem::temp_directory_path() / "nilrigid_cli_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "ab4.txt") << "\n";
  r = run({"info", (dir / "ab4.txt").string(), "--dim", "4"});
  CHECK(r.code == 0);
  CHECK(r.out.find("abelian") != std::string::npos);
  CHECK(r.out.find("orbit dim 0") != std::string::npos);

  std::ofstream(dir / "fam.txt") << "ab = c, ac = td\n";
  r = run({"info", (dir / "fam.txt").string(), "--params", "t=3", "--json"});
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["dim"] == 4);
  CHECK(j["nil_index"] == 3);

  r = run({"info", "g5(r,t)", "--params", "r=1,t=1"});
  CHECK(r.out.find("not nilpotent") != std::string::npos);
}

TEST_CASE("cohomology") {
  auto r = run({"cohomology", "g137B"});
  CHECK(r.code == 0);
  CHECK(r.out.find("h=0") != std::string::npos);
  CHECK(r.out.find("RIGID in N_{7,3}") != std::string::npos);
  r = run({"cohomology", "g5,3", "--k", "3", "--json"});
  const Json j = Json::parse(r.out);
  CHECK(j["z"] == 17);
  CHECK(j["b"] == 15);
  CHECK(j["h"] == 2);
  r = run({"cohomology", "g147E1(t)", "--params", "t=2"});
  CHECK(r.out.find("h=1") != std::string::npos);
  r = run({"cohomology", "g5(r,t)", "--params", "r=0,t=1", "--ordinary"});
  CHECK(r.out.find("h=9") != std::string::npos);
}

TEST_CASE("exactness exit codes") {
  auto r = run({"exactness", "g6(r,t)", "--at", "r=2,t=3", "--free", "t"});
  CHECK(r.code == 0);
  CHECK(r.out.find("EXACT") != std::string::npos);
  r = run({"exactness", "g6(r,t)", "--at", "r=1,t=0"});
  CHECK(r.code == 1);
  CHECK(r.out.find("NOT EXACT") != std::string::npos);
}

TEST_CASE("ideal subcommands") {
  auto r = run({"ideal", "gens", "--n", "5", "--k", "4", "--kind", "J", "--json"});
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["generators"].size() == 2);
  r = run({"ideal", "member", "--n", "6", "--k", "4", "--degree", "6", "--poly",
           "(t_{1,2,3}*t_{2,3,4}*t_{3,4,6})^2"});
  CHECK(r.out.find("MEMBER") != std::string::npos);
  r = run({"ideal", "nonmember", "--n", "6", "--k", "4", "--poly", "t_{1,2,3}*t_{2,3,4}*t_{3,4,6}", "--zero",
           "t124,t134,t145,t146,t235,t256,t345,t356,t456"});
  CHECK(r.code == 0);
  CHECK(r.out.find("NOT A MEMBER") != std::string::npos);
}

TEST_CASE("reproduce and list") {
  auto r = run({"reproduce", "dim5", "--json", "--no-timing"});
  CHECK(r.code == 0);
  CHECK(r.out == run({"reproduce", "dim5", "--json", "--no-timing"}).out);
  r = run({"--pack", (kData / "pack").string(), "list"});
  CHECK(r.out.find("fixture-h5") != std::string::npos);
  CHECK(r.out.find("data pack") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"info"}).code == 2);
  CHECK(run({"info", "no-such-algebra"}).code == 2);
  CHECK(run({"info", "g6,26"}).code == 2);
  CHECK(run({"reproduce", "dim9"}).code == 2);
  CHECK(run({"exactness", "g5(r,t)", "--at", "r=1"}).code == 2);
  CHECK(run({"exactness", "g5(r,t)", "--at", "r=1,t=1", "--constraint", "x4"}).code == 2);
  CHECK(run({"ideal", "member", "--n", "6", "--k", "4", "--poly", "t_{1,2"}).code == 2);
  auto r = run({"info", "g6,26"});
  CHECK(r.err.find("NILRIGID_DATA_PACK") != std::string::npos);
  CHECK(run({"--help"}).code == 0);
}
