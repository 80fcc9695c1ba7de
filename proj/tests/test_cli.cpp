#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(LDROP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("exit codes") {
  CHECK(run("--version") == 0);
  CHECK(run("") == 1);
  CHECK(run("zeta --lattice hcp") == 1);
  CHECK(run("cheese --K 30") == 1);
  CHECK(run("zeta --lattice bcc --s 3") == 2);
  CHECK(run("cheese --K 3 --out /proc/forbidden/x") == 3);
}

TEST_CASE("outputs do not depend on the thread count") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("ldrop_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string base = "jellium-opt --N 8 --restarts 3 --hops 2 --seed 4";
  REQUIRE(run(base + " --threads 1 --out " + (dir / "a").string()) == 0);
  REQUIRE(run(base + " --threads 8 --out " + (dir / "b").string()) == 0);
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
  CHECK_FALSE(slurp(dir / "a.csv").empty());
  fs::remove_all(dir);
}

TEST_CASE("config file values yield to flags") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("ldrop_cfg_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::ofstream(dir / "c.ini") << "# comment\nK = 2\n";
  REQUIRE(run("cheese --config " + (dir / "c.ini").string() + " --out " + (dir / "a").string()) == 0);
  REQUIRE(run("cheese --K 2 --out " + (dir / "b").string()) == 0);
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  REQUIRE(run("cheese --config " + (dir / "c.ini").string() + " --K 3 --out " + (dir / "c").string()) == 0);
  CHECK(slurp(dir / "c.csv") != slurp(dir / "a.csv"));
  fs::remove_all(dir);
}

}
