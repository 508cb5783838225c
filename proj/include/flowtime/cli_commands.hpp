#ifndef FLOWTIME_CLI_COMMANDS_HPP
#define FLOWTIME_CLI_COMMANDS_HPP

#include <string>
#include <vector>

#include "flowtime/rational.hpp"

namespace flowtime::cli {

// Exit codes shared by all commands, fixed for scriptability.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kDemandInfeasible = 2;
inline constexpr int kCertificateFailure = 3;
inline constexpr int kInternalError = 4;

struct Options {
  std::string instance_path;
  std::string out_dir = ".";
  std::vector<std::string> deltas = {"1", "1/2", "1/4"};
  int samples = 32;
  unsigned long long seed = 1;
};

// solve: flow.json, schedule.json, summary.json, per-arc rate CSVs
int cmd_solve(const Options& options);
// tolls: everything solve writes plus potentials.json, tolls.json,
// certificate_report.json and per-arc toll CSVs; exit 3 unless the
// certificate verifies with zero duality gap
int cmd_tolls(const Options& options);
// curve: curve.json with the piecewise-linear demand/horizon map
int cmd_curve(const Options& options);
// oracle: oracle_report.json comparing against time-expanded solves
int cmd_oracle(const Options& options);
// eaf: solve with the cost replaced by the earliest-arrival preset
int cmd_eaf(const Options& options);

}  // namespace flowtime::cli

#endif  // FLOWTIME_CLI_COMMANDS_HPP
