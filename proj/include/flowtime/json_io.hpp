#ifndef FLOWTIME_JSON_IO_HPP
#define FLOWTIME_JSON_IO_HPP

#include <json.hpp>

#include <optional>
#include <string>

#include "flowtime/duals.hpp"
#include "flowtime/flow_over_time.hpp"
#include "flowtime/network.hpp"
#include "flowtime/schedule.hpp"
#include "flowtime/scheduling_cost.hpp"
#include "flowtime/ssp.hpp"
#include "flowtime/time_expanded.hpp"

namespace flowtime {

using Json = nlohmann::ordered_json;

// Instance file: a network, a scheduling cost, and exactly one target
// (a demand to route or a cost horizon to fill).
struct Instance {
  Network network;
  SchedulingCost cost;
  std::optional<Rational> demand;
  std::optional<Rational> horizon;
};

Rational rational_from_json(const Json& j, const std::string& field);
Json rational_to_json(const Rational& r);  // canonical "p/q" / integer string

Network network_from_json(const Json& j);
SchedulingCost cost_from_json(const Json& j);
Instance instance_from_json(const Json& j);
Instance load_instance(const std::string& path);

Json network_to_json(const Network& net);
Json cost_to_json(const SchedulingCost& cost);
Json piecewise_to_json(const PiecewiseLinear& f);
PiecewiseLinear piecewise_from_json(const Json& j);

Json flow_to_json(const FlowOverTime& flow);
FlowOverTime flow_from_json(const Network& net, const Json& j);
Json schedule_to_json(const Network& net, const SspDecomposition& decomp,
                      const PathSchedule& schedule);
Json decomposition_to_json(const SspDecomposition& decomp);
Json potentials_to_json(const DualCertificate& certificate);
DualCertificate certificate_from_json(const Network& net, const Json& j);
Json tolls_to_json(const Network& net, const TollSchedule& tolls);
Json certificate_report_to_json(const CertificateReport& report, const Rational& gap,
                                const EquilibriumReport& equilibrium);
Json curve_to_json(const ParametricCurve& curve);
Json oracle_report_to_json(const OracleReport& report,
                           const std::optional<std::vector<DeadlineCheck>>& deadlines);

// Write via a temporary file and rename, so readers never see partial files.
void write_file_atomic(const std::string& path, const std::string& content);

// Step-function and line plots as CSV (theta,value rows).
std::string step_function_csv(const PiecewiseLinear& f);
std::string piecewise_csv(const PiecewiseLinear& f);

}  // namespace flowtime

#endif  // FLOWTIME_JSON_IO_HPP
