// Command-line front end: solve instances, derive tolls and certificates,
// emit the demand/horizon curve, and cross-check against the discrete
// time-expanded oracle.

#include <CLI11.hpp>

#include "flowtime/cli_commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"optimal flows over time with scheduling costs and tolls"};
  app.require_subcommand(1);

  flowtime::cli::Options options;
  auto add_common = [&](CLI::App* cmd, bool with_out) {
    cmd->add_option("-i,--instance", options.instance_path, "instance JSON file")
        ->required();
    if (with_out)
      cmd->add_option("-o,--out", options.out_dir, "output directory (default .)");
  };

  CLI::App* solve = app.add_subcommand("solve", "compute the optimal flow over time");
  add_common(solve, true);
  CLI::App* tolls = app.add_subcommand(
      "tolls", "solve, then derive potentials, tolls and the optimality certificate");
  add_common(tolls, true);
  tolls->add_option("--samples", options.samples, "random samples for the equilibrium audit");
  tolls->add_option("--seed", options.seed, "seed for the randomized samples");
  CLI::App* curve =
      app.add_subcommand("curve", "emit the piecewise-linear demand/horizon curve");
  add_common(curve, true);
  CLI::App* oracle = app.add_subcommand(
      "oracle", "compare against exact time-expanded discrete solves");
  add_common(oracle, true);
  oracle->add_option("--deltas", options.deltas,
                     "time steps for the discrete solves (default 1 1/2 1/4)");
  CLI::App* eaf = app.add_subcommand(
      "eaf", "solve with the earliest-arrival cost preset in place of the instance cost");
  add_common(eaf, true);

  CLI11_PARSE(app, argc, argv);

  if (solve->parsed()) return flowtime::cli::cmd_solve(options);
  if (tolls->parsed()) return flowtime::cli::cmd_tolls(options);
  if (curve->parsed()) return flowtime::cli::cmd_curve(options);
  if (oracle->parsed()) return flowtime::cli::cmd_oracle(options);
  if (eaf->parsed()) return flowtime::cli::cmd_eaf(options);
  return flowtime::cli::kInputError;
}
