#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <string>

using nlohmann::json;

namespace {

struct CmdResult {
  int code{};
  std::string out;
};

std::string cli_bin() {
  const char* bin = std::getenv("TRN_CLI_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "TRN_CLI_BIN must point at the trn binary");
  return bin;
}

CmdResult run_cli(const std::string& args, bool merge_stderr = false) {
  const std::string cmd =
      cli_bin() + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CmdResult result;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, got);
  const int status = pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string temp_name(const std::string& stem) {
  return "/tmp/trn_cli_" + std::to_string(::getpid()) + "_" + stem;
}

std::string write_doc(const std::string& stem, const std::string& text) {
  const std::string path = temp_name(stem);
  std::ofstream(path) << text;
  return path;
}

const char* kInconsistentDoc = R"({
  "version": 1,
  "events": ["A", "B"],
  "temporal": {"type": "stn", "constraints": [
    {"from": "A", "to": "B", "lb": 1.0, "ub": 5.0}]},
  "resources": [{"start": "A", "end": "B", "rate": 1.0}]
})";

const char* kPstnDoc = R"({
  "version": 1,
  "events": ["A", "B", "C"],
  "temporal": {
    "type": "pstn",
    "probability": 0.95,
    "constraints": [{"from": "A", "to": "C", "lb": 0.0, "ub": 30.0}],
    "udns": [{"from": "A", "to": "B",
              "dist": {"type": "normal", "mean": 10.0, "std": 1.0}}]
  },
  "resources": [{"start": "A", "end": "C", "rate": -1.0}, {"start": "A", "end": "C", "rate": 0.5}]
})";

}  // namespace

TEST_CASE("gen then check round trip") {
  const std::string path = temp_name("gen.json");
  const CmdResult gen = run_cli("gen -n 6 -r 3 --seed 11 -o " + path);
  REQUIRE(gen.code == 0);

  const CmdResult cp = run_cli("check " + path);
  CHECK(cp.code == 0);
  CHECK(cp.out == "consistent\n");

  const CmdResult ex = run_cli("check --solver exhaustive " + path);
  CHECK(ex.code == 0);
  CHECK(ex.out == "consistent\n");

  const CmdResult stats = run_cli("check " + path, true);
  CHECK(stats.out.find("nodes=") != std::string::npos);
  CHECK(stats.out.find("elapsed_s=") != std::string::npos);

  const CmdResult naive = run_cli("check --naive-order " + path);
  CHECK(naive.code == 0);
  std::remove(path.c_str());
}

TEST_CASE("inconsistent instances exit 1") {
  const std::string path = write_doc("bad.json", kInconsistentDoc);
  const CmdResult r = run_cli("check " + path);
  CHECK(r.code == 1);
  CHECK(r.out == "inconsistent\n");
  std::remove(path.c_str());
}

TEST_CASE("input problems exit 3") {
  CHECK(run_cli("check /nonexistent.json", true).code == 3);
  const std::string path = write_doc("junk.json", "{oops");
  const CmdResult r = run_cli("check " + path, true);
  CHECK(r.code == 3);
  CHECK(r.out.find("error:") != std::string::npos);
  std::remove(path.c_str());

  CHECK(run_cli("gen -n 1 -r 2 -o /tmp/never.json", true).code == 3);
}

TEST_CASE("usage problems exit 3 and help exits 0") {
  CHECK(run_cli("frobnicate", true).code == 3);
  CHECK(run_cli("check", true).code == 3);
  CHECK(run_cli("check --solver wat x.json", true).code == 3);
  CHECK(run_cli("--help", true).code == 0);
}

TEST_CASE("deadlines exit 2") {
  const std::string path = temp_name("big.json");
  REQUIRE(run_cli("gen -n 12 -r 8 --seed 3 -o " + path).code == 0);
  const CmdResult r = run_cli("check --timeout 0.000000001 " + path, true);
  CHECK(r.code == 2);
  CHECK(r.out.find("timeout:") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("mip path needs a solver and a plain stn") {
  const std::string path = write_doc("mip.json", kInconsistentDoc);
  const std::string cmd = "env -u TRN_MIP_SOLVER " + cli_bin() +
                          " check --solver mip " + path + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  CHECK(WEXITSTATUS(status) == 3);
  CHECK(out.find("no MIP solver configured") != std::string::npos);
  std::remove(path.c_str());

  const std::string pstn_path = write_doc("pstn.json", kPstnDoc);
  const CmdResult r = run_cli("check --solver mip " + pstn_path, true);
  CHECK(r.code == 3);
  CHECK(r.out.find("MIP formulation") != std::string::npos);
  std::remove(pstn_path.c_str());
}

TEST_CASE("pstn instances report a risk bound") {
  const std::string path = write_doc("pstn2.json", kPstnDoc);
  const CmdResult r = run_cli("check " + path);
  CHECK(r.code == 0);
  CHECK(r.out.find("consistent risk_bound=") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("export-lp writes the encoding") {
  const std::string doc = write_doc("lp_in.json", kInconsistentDoc);
  const std::string lp = temp_name("out.lp");
  REQUIRE(run_cli("export-lp " + doc + " -o " + lp).code == 0);
  std::ifstream f(lp);
  std::string first;
  std::getline(f, first);
  CHECK(first == "Minimize");
  std::string rest((std::istreambuf_iterator<char>(f)),
                   std::istreambuf_iterator<char>());
  CHECK(rest.find("Binaries") != std::string::npos);
  CHECK(rest.find("End") != std::string::npos);

  REQUIRE(run_cli("export-lp --horizon 99 " + doc + " -o " + lp).code == 0);
  std::ifstream f2(lp);
  std::string all((std::istreambuf_iterator<char>(f2)),
                  std::istreambuf_iterator<char>());
  CHECK(all.find("99") != std::string::npos);
  std::remove(doc.c_str());
  std::remove(lp.c_str());
}

TEST_CASE("witness schedules land where asked") {
  const std::string path = temp_name("wit.json");
  REQUIRE(run_cli("gen -n 5 -r 2 --seed 21 -o " + path).code == 0);
  const std::string sched = temp_name("sched.json");
  REQUIRE(run_cli("check --schedule-out " + sched + " " + path).code == 0);
  std::ifstream f(sched);
  json doc;
  f >> doc;
  CHECK(doc["version"] == 1);
  CHECK(doc["schedule"].is_object());
  CHECK(doc["schedule"].size() == 5);
  std::remove(path.c_str());
  std::remove(sched.c_str());
}

TEST_CASE("verbose mode prints the schedule") {
  const std::string path = temp_name("verb.json");
  REQUIRE(run_cli("gen -n 4 -r 2 --seed 9 -o " + path).code == 0);
  const CmdResult r = run_cli("check -v " + path);
  CHECK(r.code == 0);
  CHECK(r.out.find("  e0 = ") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("smart house demo") {
  const std::string sched = temp_name("house.json");
  const CmdResult r = run_cli("demo smart-house --schedule-out " + sched);
  CHECK(r.code == 0);
  CHECK(r.out.find("consistent risk_bound=0.02") != std::string::npos);
  CHECK(r.out.find("wash_start") != std::string::npos);

  std::ifstream f(sched);
  json doc;
  f >> doc;
  CHECK(doc["risk_bound"].get<double>() == doctest::Approx(0.02).epsilon(1e-9));
  const json& s = doc["schedule"];
  // Wash finishes before the tightened arrival window can open; lights are on
  // before the earliest sunset the bound allows.
  CHECK(s["wash_end"].get<double>() <= 287.63);
  CHECK(s["lights_on"].get<double>() <= 417.53);
  CHECK(s["day_end"].get<double>() - s["day_start"].get<double>() ==
        doctest::Approx(780.0));
  CHECK_FALSE(s.contains("arrival"));
  CHECK_FALSE(s.contains("sunset"));

  CHECK(run_cli("demo unknown-name", true).code == 3);
  std::remove(sched.c_str());
}

TEST_CASE("bench subcommand writes csv") {
  const std::string config = write_doc("bench_cfg.json", R"({
    "n_values": [4], "r_values": [2], "trials_per_cell": 2,
    "timeout_s": 20.0, "solvers": ["cp", "exhaustive"], "base_seed": 3
  })");
  const std::string csv = temp_name("bench.csv");
  const std::string ratio = temp_name("ratio.csv");
  const CmdResult r =
      run_cli("bench --serial --config " + config + " -o " + csv +
              " --ratio-csv " + ratio);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("density") != std::string::npos);

  std::ifstream f(csv);
  std::string header;
  std::getline(f, header);
  CHECK(header == "solver,N,R,density,trial,seed,outcome,elapsed_s");
  int lines = 0;
  std::string line;
  while (std::getline(f, line)) lines += !line.empty();
  CHECK(lines == 4);

  std::ifstream rf(ratio);
  std::getline(rf, header);
  CHECK(header.rfind("density,N,R,", 0) == 0);

  const std::string bad = write_doc("bad_cfg.json", R"({"n_values": [4]})");
  CHECK(run_cli("bench --config " + bad + " -o " + csv, true).code == 3);
  std::remove(config.c_str());
  std::remove(csv.c_str());
  std::remove(ratio.c_str());
  std::remove(bad.c_str());
}
