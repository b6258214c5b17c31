#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(ORBIDX_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

const std::string catalog = ORBIDX_CATALOG_DIR;
const std::string data = ORBIDX_TEST_DATA_DIR;

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run("verify --scenario " + catalog + "/disk_z2_saddle.json").code == 0);
  CHECK(run("verify --scenario " + data + "/malformed.json").code == 2);
  CHECK(run("verify --scenario " + data + "/disk_reflection.json").code == 2);
  CHECK(run("verify --scenario " + data + "/disk_trivial_rotational.json").code == 1);
  CHECK(run("chain --scenario " + data + "/disk_trivial_rotational.json").code == 1);
  CHECK(run("verify --scenario " + catalog + "/disk_z2_saddle.json --checks nope").code == 2);
  CHECK(run("verify").code == 2);
  CHECK(run("frobnicate").code == 2);
}

TEST_CASE("json report") {
  auto r = run("verify --scenario " + catalog + "/disk_z3_radial.json --json -");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["scenario"] == "disk_z3_radial");
  CHECK(j["lhs"]["num"] == 1);
  CHECK(j["lhs"]["den"] == 3);
  CHECK_FALSE(j.contains("elapsed_ms"));

  auto again = run("verify --scenario " + catalog + "/disk_z3_radial.json --json -");
  CHECK(again.out == r.out);

  auto timed = nlohmann::json::parse(run("verify --scenario " + catalog + "/disk_z3_radial.json --json - --timing").out);
  CHECK(timed.contains("elapsed_ms"));
}

TEST_CASE("subcommands") {
  for (const char* cmd : {"chi", "index", "chain", "double", "inertia"}) {
    CAPTURE(cmd);
    auto r = run(std::string(cmd) + " --scenario " + catalog + "/disk_z2_saddle.json");
    CHECK(r.code == 0);
    CHECK_FALSE(r.out.empty());
  }
  auto chi = nlohmann::json::parse(run("chi --scenario " + catalog + "/disk_z3_radial.json --json -").out);
  CHECK(chi.contains("chi"));
}

TEST_CASE("tolerance flags") {
  CHECK(run("verify --scenario " + catalog + "/disk_z2_saddle.json --tol-grid-density 4").code == 0);
  CHECK(run("verify --scenario " + catalog + "/disk_z2_saddle.json --tol-newton abc").code == 2);
}

TEST_CASE("catalog") {
  auto r = run("catalog --dir " + catalog);
  CHECK(r.code == 0);
  CHECK(r.out.find("disk_z2_saddle") != std::string::npos);
  CHECK(r.out.find("fail") == std::string::npos);
}
