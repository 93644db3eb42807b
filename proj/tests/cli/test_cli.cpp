// Smoke tests of the command-line tool: exit codes, artifact layout, and
// manifest-based replay.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

#ifndef DCNET_TOOL_PATH
#error "DCNET_TOOL_PATH must point at the CLI binary"
#endif

struct ToolResult {
  int exit_code = -1;
  std::string out;  // stdout + stderr combined
};

ToolResult run_tool(const std::string& args) {
  const std::string cmd = std::string(DCNET_TOOL_PATH) + " " + args + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  ToolResult r;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof(buf), pipe)) {
    r.out.append(buf, n);
  }
  const int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() /
                 ("dcnet_cli_" + std::to_string(::getpid()) + "_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Drops the leading "# manifest: ..." line, which embeds the artifact tag.
std::string body_after_header(const std::string& csv) {
  const std::size_t nl = csv.find('\n');
  REQUIRE(nl != std::string::npos);
  return csv.substr(nl + 1);
}

}  // namespace

TEST_CASE("validate accepts the built-in scenario") {
  ToolResult r = run_tool("validate --scenario abilene");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("ok") != std::string::npos);
  CHECK(r.out.find("capacity groups: 39") != std::string::npos);
}

TEST_CASE("validate rejects a malformed scenario file") {
  fs::path dir = fresh_dir("badjson");
  fs::path bad = dir / "bad.json";
  std::ofstream(bad) << "{ not json";
  ToolResult r = run_tool("validate --scenario " + bad.string());
  CHECK(r.exit_code == 2);
}

TEST_CASE("usage errors exit with the config-error code") {
  CHECK(run_tool("run --T 10").exit_code == 2);          // no scenario
  CHECK(run_tool("capacity --scenario abilene").exit_code == 2);  // no --L
  CHECK(run_tool("frobnicate").exit_code == 2);          // unknown command
  CHECK(run_tool("run --scenario abilene --no-such-flag 1").exit_code == 2);
  CHECK(run_tool("--version").exit_code == 0);
}

TEST_CASE("run produces artifacts and replays bit-identically") {
  fs::path dir1 = fresh_dir("run1");
  ToolResult r1 = run_tool("run --scenario abilene --T 400 --seed 11 "
                           "--record-every 100 --tag t1 --out " +
                           dir1.string());
  CHECK(r1.exit_code == 0);
  for (const char* f :
       {"t1_metrics.csv", "t1_summary.csv", "t1_commodities.csv",
        "t1_manifest.json"}) {
    CHECK_MESSAGE(fs::exists(dir1 / f), f);
  }
  const std::string metrics1 = slurp(dir1 / "t1_metrics.csv");
  CHECK(metrics1.rfind("# manifest: t1_manifest.json config ", 0) == 0);
  const std::string summary1 = slurp(dir1 / "t1_summary.csv");
  CHECK(summary1.find("policy,V,horizon,seed") != std::string::npos);
  CHECK(summary1.find("proposed") != std::string::npos);

  // Replay from the manifest alone (no --scenario): identical numbers.
  fs::path dir2 = fresh_dir("run2");
  ToolResult r2 = run_tool("run --from-manifest " +
                           (dir1 / "t1_manifest.json").string() +
                           " --tag t2 --out " + dir2.string());
  CHECK(r2.exit_code == 0);
  CHECK(body_after_header(slurp(dir2 / "t2_metrics.csv")) ==
        body_after_header(metrics1));
  CHECK(body_after_header(slurp(dir2 / "t2_summary.csv")) ==
        body_after_header(summary1));

  // A flag given at replay time overrides the manifest.
  fs::path dir3 = fresh_dir("run3");
  ToolResult r3 = run_tool("run --from-manifest " +
                           (dir1 / "t1_manifest.json").string() +
                           " --seed 12 --tag t3 --out " + dir3.string());
  CHECK(r3.exit_code == 0);
  CHECK(body_after_header(slurp(dir3 / "t3_summary.csv")) !=
        body_after_header(summary1));
}

TEST_CASE("queue snapshots dump every virtual queue on schedule") {
  fs::path dir = fresh_dir("uq");
  ToolResult r = run_tool("run --scenario abilene --T 300 --seed 9 "
                          "--record-every 100 --u-snapshot-every 100 "
                          "--tag q --out " + dir.string());
  CHECK(r.exit_code == 0);
  REQUIRE(fs::exists(dir / "q_uqueues.csv"));
  const std::string csv = slurp(dir / "q_uqueues.csv");
  CHECK(csv.find("slot,commodity,node,lifetime,U") != std::string::npos);
  // Abilene's layered graph has 22 nodes and lifetime depth 7: each of the
  // 2 commodities dumps one deficit row plus 21 x 7 conservation rows, so
  // every snapshot contributes 2 x 148 rows, taken at slots 99/199/299.
  int lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == 2 + 3 * 2 * 148);
  CHECK(csv.find("\n99,") != std::string::npos);
  CHECK(csv.find("\n299,") != std::string::npos);

  // The artifact is off by default and the flag survives manifest replay.
  fs::path dir2 = fresh_dir("uq2");
  ToolResult r2 = run_tool("run --from-manifest " +
                           (dir / "q_manifest.json").string() +
                           " --tag q2 --out " + dir2.string());
  CHECK(r2.exit_code == 0);
  REQUIRE(fs::exists(dir2 / "q2_uqueues.csv"));
  CHECK(body_after_header(slurp(dir2 / "q2_uqueues.csv")) ==
        body_after_header(csv));
}

TEST_CASE("capacity probe reports feasibility through the exit code") {
  fs::path dir = fresh_dir("cap");
  ToolResult ok = run_tool("capacity --scenario abilene --L 5 --theta 0.5 "
                           "--tag cok --out " + dir.string());
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("feasible") != std::string::npos);
  CHECK(fs::exists(dir / "cok_capacity.csv"));

  ToolResult bad = run_tool("capacity --scenario abilene --L 5 --theta 50 "
                            "--tag cbad --out " + dir.string());
  CHECK(bad.exit_code == 4);
  CHECK(bad.out.find("infeasible") != std::string::npos);
}

TEST_CASE("sweep writes one tidy row per run") {
  fs::path dir = fresh_dir("sweep");
  ToolResult r = run_tool(
      "sweep --scenario abilene --axis V --values 0 10 --policies proposed "
      "dcnc --replications 2 --T 50 --seed 5 --record-every 50 --tag s "
      "--out " + dir.string());
  CHECK(r.exit_code == 0);
  const std::string csv = slurp(dir / "s_sweep.csv");
  int lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == 2 + 8);  // marker + header + 2 policies x 2 values x 2 reps
  CHECK(csv.find("dcnc") != std::string::npos);
  CHECK(fs::exists(dir / "s_manifest.json"));
}

TEST_CASE("scenario files round-trip through validate") {
  fs::path dir = fresh_dir("file");
  fs::path scen = dir / "line.json";
  std::ofstream(scen) << R"({
    "name": "line",
    "flow_unit_mbps": 10,
    "nodes": 3,
    "links": [
      {"from": 1, "to": 2, "capacity_mbps": 100, "cost_per_gb": 1.0},
      {"from": 2, "to": 3, "capacity_mbps": 100, "cost_per_gb": 1.0}
    ],
    "service_stages": 0,
    "clients": [
      {"source": 1, "destination": 3, "gamma": 0.9, "max_lifetime": 4,
       "lambda_mbps": 30}
    ],
    "defaults": {"horizon": 1000, "seed": 7}
  })";
  ToolResult r = run_tool("validate --scenario " + scen.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("ok") != std::string::npos);

  // And it can actually run.
  ToolResult run = run_tool("run --scenario " + scen.string() +
                            " --T 200 --tag f --out " + dir.string());
  CHECK(run.exit_code == 0);
  CHECK(fs::exists(dir / "f_summary.csv"));
}
