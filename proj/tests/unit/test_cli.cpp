#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(DCX_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("classes and entropy") {
  const auto c = run("classes --dialect gmlu --k 1 --n 2");
  CHECK(c.code == 0);
  CHECK(c.out.rfind("class_id,dialect,k,n,size,probability,boltzmann_bits\n", 0) == 0);
  const auto e = run("entropy --dialect gmlu --k 1 --n 2 --format json");
  CHECK(e.code == 0);
  CHECK(e.out.find("\"shannon_bits\"") != std::string::npos);
}

TEST_CASE("complexity") {
  const auto r = run("complexity --dialect gmlu --k 1 --n 3");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"[2,1]\",2,6,11,6,") != std::string::npos);
}

TEST_CASE("games") {
  CHECK(run("game solve --instance missing-type --k 1 --r 4").out.find("winner=D") != std::string::npos);
  CHECK(run("game solve --instance missing-type --k 1 --r 5").out.find("winner=S") != std::string::npos);
  CHECK(run("game verify --strategy hardness --k 1 --r 4").code == 0);
  CHECK(run("game verify --strategy hardness --k 1 --r 5").code == 1);
}

TEST_CASE("census and bounds") {
  const auto r = run("fo-census --n-max 3 --arities 2");
  CHECK(r.code == 0);
  CHECK(r.out.find("\n3,512,104,") != std::string::npos);
  CHECK(run("bounds --m 2 --c 0.1 --n-max 10000").code == 0);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("classes --dialect nope --k 1 --n 2").code == 2);
  CHECK(run("complexity --dialect gmlu --k 0 --n 3").code == 2);
  CHECK(run("plot --csv /nonexistent.csv --x n --y y --out /tmp/x.svg").code == 2);
  CHECK(run("no-such-command").code == 2);
}
