#include "flowtime/cli_commands.hpp"

#include <cctype>
#include <filesystem>
#include <iostream>

#include "flowtime/duals.hpp"
#include "flowtime/errors.hpp"
#include "flowtime/json_io.hpp"

namespace flowtime::cli {

namespace {

struct SolvedInstance {
  Instance instance;
  SspDecomposition decomp;
  PathSchedule schedule;
  FlowOverTime flow;
  Rational cost_value;
};

std::string sanitized(const std::string& name) {
  std::string out;
  for (char c : name) out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  return out;
}

std::string join(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

SolvedInstance solve_pipeline(Instance instance) {
  SspDecomposition decomp(instance.network);
  PathSchedule schedule =
      instance.demand.has_value()
          ? schedule_for_demand(decomp, instance.cost, *instance.demand)
          : path_schedule(decomp, instance.cost, *instance.horizon);
  FlowOverTime flow = assemble(decomp, schedule);
  Rational cost_value = primal_cost(flow, instance.cost, &schedule);
  return SolvedInstance{std::move(instance), std::move(decomp), std::move(schedule),
                        std::move(flow), std::move(cost_value)};
}

void write_solution_files(const SolvedInstance& solved, const Options& options) {
  std::filesystem::create_directories(options.out_dir);
  write_file_atomic(join(options.out_dir, "flow.json"),
                    flow_to_json(solved.flow).dump(2) + "\n");
  write_file_atomic(
      join(options.out_dir, "schedule.json"),
      schedule_to_json(solved.instance.network, solved.decomp, solved.schedule).dump(2) +
          "\n");

  Json summary;
  summary["value"] = rational_to_json(solved.flow.value());
  summary["horizon"] = rational_to_json(solved.flow.horizon());
  summary["primal_cost"] = rational_to_json(solved.cost_value);
  summary["max_flow"] = rational_to_json(solved.decomp.max_flow_value());
  summary["delta"] = rational_to_json(solved.schedule.delta());
  summary["paths"] = Json::array();
  for (int p = 0; p < solved.decomp.path_count(); ++p) {
    const PathWindow& w = solved.schedule.windows()[p];
    Json pj;
    pj["delay"] = rational_to_json(w.stage_delay);
    pj["amount"] = rational_to_json(w.rate);
    pj["departure_measure"] = rational_to_json(w.departures.measure());
    summary["paths"].push_back(std::move(pj));
  }
  summary["cost"] = cost_to_json(solved.instance.cost);
  write_file_atomic(join(options.out_dir, "summary.json"), summary.dump(2) + "\n");

  const Network& net = solved.instance.network;
  for (int a = 0; a < net.arc_count(); ++a)
    write_file_atomic(join(options.out_dir, "rate_" + sanitized(net.arc(a).name) + ".csv"),
                      step_function_csv(solved.flow.rate(a)));
}

int report_error(const std::exception& e, int code) {
  std::cerr << "error: " << e.what() << "\n";
  return code;
}

template <typename Body>
int guarded(const Body& body) {
  try {
    return body();
  } catch (const demand_infeasible_error& e) {
    return report_error(e, kDemandInfeasible);
  } catch (const input_error& e) {
    return report_error(e, kInputError);
  } catch (const internal_error& e) {
    return report_error(e, kInternalError);
  } catch (const std::exception& e) {
    return report_error(e, kInternalError);
  }
}

}  // namespace

int cmd_solve(const Options& options) {
  return guarded([&] {
    SolvedInstance solved = solve_pipeline(load_instance(options.instance_path));
    write_solution_files(solved, options);
    return kOk;
  });
}

int cmd_eaf(const Options& options) {
  return guarded([&] {
    Instance instance = load_instance(options.instance_path);
    instance.cost = SchedulingCost::earliest_arrival(instance.cost.alpha());
    SolvedInstance solved = solve_pipeline(std::move(instance));
    write_solution_files(solved, options);
    return kOk;
  });
}

int cmd_tolls(const Options& options) {
  return guarded([&] {
    SolvedInstance solved = solve_pipeline(load_instance(options.instance_path));
    write_solution_files(solved, options);

    DualCertificate certificate =
        build_potentials(solved.decomp, solved.instance.cost, solved.flow.horizon());
    TollSchedule tolls = build_tolls(certificate, solved.instance.network);
    CertificateReport report =
        verify_certificate(solved.flow, certificate, solved.instance.cost, &solved.decomp);
    Rational gap =
        duality_gap(solved.flow, certificate, tolls, solved.instance.cost, &solved.schedule);
    EquilibriumReport equilibrium =
        equilibrium_check(solved.flow, certificate, tolls, solved.instance.cost,
                          solved.schedule, options.samples, options.seed);

    write_file_atomic(join(options.out_dir, "potentials.json"),
                      potentials_to_json(certificate).dump(2) + "\n");
    write_file_atomic(join(options.out_dir, "tolls.json"),
                      tolls_to_json(solved.instance.network, tolls).dump(2) + "\n");
    write_file_atomic(join(options.out_dir, "certificate_report.json"),
                      certificate_report_to_json(report, gap, equilibrium).dump(2) + "\n");
    const Network& net = solved.instance.network;
    for (int a = 0; a < net.arc_count(); ++a)
      write_file_atomic(join(options.out_dir, "toll_" + sanitized(net.arc(a).name) + ".csv"),
                        piecewise_csv(tolls.toll(a)));

    bool ok = report.all_hold() && gap.is_zero() && equilibrium.all_hold();
    return ok ? kOk : kCertificateFailure;
  });
}

int cmd_curve(const Options& options) {
  return guarded([&] {
    Instance instance = load_instance(options.instance_path);
    SspDecomposition decomp(instance.network);
    ParametricCurve curve(decomp, instance.cost);
    std::filesystem::create_directories(options.out_dir);
    write_file_atomic(join(options.out_dir, "curve.json"),
                      curve_to_json(curve).dump(2) + "\n");
    return kOk;
  });
}

int cmd_oracle(const Options& options) {
  return guarded([&] {
    SolvedInstance solved = solve_pipeline(load_instance(options.instance_path));
    std::vector<Rational> steps;
    for (const std::string& text : options.deltas) steps.push_back(Rational::parse(text));
    OracleReport report =
        run_discrete_oracle(solved.instance.network, solved.instance.cost, solved.flow,
                            solved.schedule, solved.cost_value, steps);
    std::optional<std::vector<DeadlineCheck>> deadlines;
    SchedulingCost eaf = SchedulingCost::earliest_arrival(solved.instance.cost.alpha());
    if (solved.instance.cost.rho() == eaf.rho())
      deadlines = earliest_arrival_deadline_checks(solved.instance.network,
                                                   solved.instance.cost, solved.flow);
    std::filesystem::create_directories(options.out_dir);
    write_file_atomic(join(options.out_dir, "oracle_report.json"),
                      oracle_report_to_json(report, deadlines).dump(2) + "\n");
    bool ok = report.dominance_holds && report.gaps_nonincreasing;
    if (deadlines)
      for (const DeadlineCheck& check : *deadlines)
        ok = ok && check.continuous_amount == check.discrete_max;
    return ok ? kOk : kCertificateFailure;
  });
}

}  // namespace flowtime::cli
