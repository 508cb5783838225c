#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "flowtime/cli_commands.hpp"
#include "flowtime/duals.hpp"
#include "flowtime/json_io.hpp"
#include "support/instances.hpp"

using namespace flowtime;
using namespace flowtime::testing;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("flowtime_test_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string figure_one_instance(const std::string& target) {
  return std::string(R"({
  "network": {
    "nodes": ["s", "a", "t"],
    "arcs": [
      {"id": "e", "tail": "s", "head": "a", "capacity": 2, "delay": 0},
      {"id": "f", "tail": "a", "head": "t", "capacity": 2, "delay": 1},
      {"id": "g", "tail": "a", "head": "t", "capacity": 1, "delay": 0}
    ],
    "source": "s",
    "sink": "t"
  },
  "cost": {"alpha": 1, "preset": "standard", "beta": "1/2", "gamma": 2},
  "target": )") + target + "\n}\n";
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Json read_json(const std::string& path) { return Json::parse(read_text(path)); }

}  // namespace

TEST_CASE("solve writes the expected artifacts") {
  TempDir dir("solve");
  write_text(dir.file("instance.json"), figure_one_instance(R"({"demand": "15/2"})"));
  cli::Options options;
  options.instance_path = dir.file("instance.json");
  options.out_dir = dir.file("out");
  CHECK(cli::cmd_solve(options) == cli::kOk);

  Json summary = read_json(dir.file("out/summary.json"));
  CHECK(summary.at("horizon").get<std::string>() == "2");
  CHECK(summary.at("value").get<std::string>() == "15/2");
  CHECK(summary.at("primal_cost").get<std::string>() == "35/4");
  CHECK(fs::exists(dir.file("out/flow.json")));
  CHECK(fs::exists(dir.file("out/schedule.json")));
  CHECK(fs::exists(dir.file("out/rate_e.csv")));
  CHECK(fs::exists(dir.file("out/rate_f.csv")));
  CHECK(fs::exists(dir.file("out/rate_g.csv")));
}

TEST_CASE("solve with zero demand") {
  TempDir dir("zero");
  write_text(dir.file("instance.json"), figure_one_instance(R"({"demand": 0})"));
  cli::Options options;
  options.instance_path = dir.file("instance.json");
  options.out_dir = dir.file("out");
  CHECK(cli::cmd_solve(options) == cli::kOk);
  Json summary = read_json(dir.file("out/summary.json"));
  CHECK(summary.at("value").get<std::string>() == "0");
  CHECK(summary.at("primal_cost").get<std::string>() == "0");
}

TEST_CASE("malformed instances exit with the input code") {
  TempDir dir("bad");
  cli::Options options;
  options.out_dir = dir.file("out");

  write_text(dir.file("broken.json"), "{ not json");
  options.instance_path = dir.file("broken.json");
  CHECK(cli::cmd_solve(options) == cli::kInputError);

  write_text(dir.file("missing.json"), R"({"network": {"nodes": []}})");
  options.instance_path = dir.file("missing.json");
  CHECK(cli::cmd_solve(options) == cli::kInputError);

  write_text(dir.file("twotargets.json"),
             figure_one_instance(R"({"demand": 1, "horizon": 1})"));
  options.instance_path = dir.file("twotargets.json");
  CHECK(cli::cmd_solve(options) == cli::kInputError);

  options.instance_path = dir.file("does_not_exist.json");
  CHECK(cli::cmd_solve(options) == cli::kInputError);
}

TEST_CASE("unreachable sink with positive demand exits demand-infeasible") {
  TempDir dir("unreach");
  std::string instance = R"({
  "network": {
    "nodes": ["s", "t"],
    "arcs": [{"id": "back", "tail": "t", "head": "s", "capacity": 1, "delay": 0}],
    "source": "s",
    "sink": "t"
  },
  "cost": {"alpha": 1, "preset": "standard", "beta": "1/2", "gamma": 2},
  "target": {"demand": 1}
})";
  write_text(dir.file("instance.json"), instance);
  cli::Options options;
  options.instance_path = dir.file("instance.json");
  options.out_dir = dir.file("out");
  CHECK(cli::cmd_solve(options) == cli::kDemandInfeasible);
}

TEST_CASE("tolls writes certificates that verify end to end") {
  TempDir dir("tolls");
  write_text(dir.file("instance.json"), figure_one_instance(R"({"demand": "15/2"})"));
  cli::Options options;
  options.instance_path = dir.file("instance.json");
  options.out_dir = dir.file("out");
  options.samples = 16;
  CHECK(cli::cmd_tolls(options) == cli::kOk);

  Json report = read_json(dir.file("out/certificate_report.json"));
  CHECK(report.at("duality_gap").get<std::string>() == "0");
  CHECK(report.at("conditions").at("potential_growth_bounded").get<bool>());
  CHECK(report.at("conditions").at("residual_gaps_respected").get<bool>());
  CHECK(report.at("conditions").at("source_potential_zero").get<bool>());
  CHECK(report.at("conditions").at("sink_potential_pinned").get<bool>());
  CHECK(fs::exists(dir.file("out/potentials.json")));
  CHECK(fs::exists(dir.file("out/tolls.json")));
  CHECK(fs::exists(dir.file("out/toll_g.csv")));
}

TEST_CASE("round trip: re-read artifacts verify without re-solving") {
  TempDir dir("roundtrip");
  write_text(dir.file("instance.json"), figure_one_instance(R"({"demand": "15/2"})"));
  cli::Options options;
  options.instance_path = dir.file("instance.json");
  options.out_dir = dir.file("out");
  REQUIRE(cli::cmd_tolls(options) == cli::kOk);

  Instance instance = load_instance(dir.file("instance.json"));
  FlowOverTime flow =
      flow_from_json(instance.network, read_json(dir.file("out/flow.json")));
  DualCertificate certificate =
      certificate_from_json(instance.network, read_json(dir.file("out/potentials.json")));
  CertificateReport report = verify_certificate(flow, certificate, instance.cost);
  CHECK(report.conditions_hold());
  TollSchedule tolls = build_tolls(certificate, instance.network);
  CHECK(duality_gap(flow, certificate, tolls, instance.cost).is_zero());
}

TEST_CASE("outputs are byte-identical across runs") {
  TempDir dir("stable");
  write_text(dir.file("instance.json"), figure_one_instance(R"({"demand": "15/2"})"));
  cli::Options options;
  options.instance_path = dir.file("instance.json");
  for (const char* out : {"out1", "out2"}) {
    options.out_dir = dir.file(out);
    REQUIRE(cli::cmd_tolls(options) == cli::kOk);
  }
  for (const char* name :
       {"flow.json", "schedule.json", "summary.json", "potentials.json", "tolls.json",
        "certificate_report.json", "rate_e.csv", "toll_g.csv"}) {
    CHECK(read_text(dir.file(std::string("out1/") + name)) ==
          read_text(dir.file(std::string("out2/") + name)));
  }
}

TEST_CASE("curve emission") {
  TempDir dir("curve");
  write_text(dir.file("instance.json"), figure_one_instance(R"({"demand": 1})"));
  cli::Options options;
  options.instance_path = dir.file("instance.json");
  options.out_dir = dir.file("out");
  CHECK(cli::cmd_curve(options) == cli::kOk);
  Json curve = read_json(dir.file("out/curve.json"));
  REQUIRE(curve.at("segments").size() == 2);
  CHECK(curve.at("segments")[0].at("slope").get<std::string>() == "5/2");
  CHECK(curve.at("segments")[0].at("c_to").get<std::string>() == "1");
  CHECK(curve.at("segments")[1].at("slope").get<std::string>() == "5");
  CHECK(curve.at("jumps").empty());
}

TEST_CASE("oracle command reports dominance") {
  TempDir dir("oracle");
  write_text(dir.file("instance.json"), figure_one_instance(R"({"demand": 2})"));
  cli::Options options;
  options.instance_path = dir.file("instance.json");
  options.out_dir = dir.file("out");
  options.deltas = {"1", "1/2"};
  CHECK(cli::cmd_oracle(options) == cli::kOk);
  Json report = read_json(dir.file("out/oracle_report.json"));
  CHECK(report.at("dominance_holds").get<bool>());
  CHECK(report.at("gaps_nonincreasing").get<bool>());
  REQUIRE(report.at("levels").size() == 2);

  options.deltas = {"1/7"};  // does not divide the unit delay of arc f
  CHECK(cli::cmd_oracle(options) == cli::kInputError);
}

TEST_CASE("eaf alias solves with the preset cost") {
  TempDir dir("eaf");
  write_text(dir.file("instance.json"), figure_one_instance(R"({"horizon": 3})"));
  cli::Options options;
  options.instance_path = dir.file("instance.json");
  options.out_dir = dir.file("out");
  CHECK(cli::cmd_eaf(options) == cli::kOk);
  Json summary = read_json(dir.file("out/summary.json"));
  CHECK(summary.at("value").get<std::string>() == "5");
  // arrivals all occur by time zero under the earliest-arrival cost
  Instance instance = load_instance(dir.file("instance.json"));
  FlowOverTime flow =
      flow_from_json(instance.network, read_json(dir.file("out/flow.json")));
  CHECK(flow.arrived_by(Rational(0)) == Rational(5));
}
