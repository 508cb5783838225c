#ifndef FLOWTIME_TESTS_SUPPORT_INSTANCES_HPP
#define FLOWTIME_TESTS_SUPPORT_INSTANCES_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "flowtime/network.hpp"
#include "flowtime/scheduling_cost.hpp"

namespace flowtime::testing {

// The three-arc instance used throughout: s -e-> a, a -f-> t (slow, wide),
// a -g-> t (fast, narrow).
Network figure_one();

// Single arc s -> t with the given capacity and delay.
Network single_arc(const Rational& capacity, const Rational& delay);

struct GeneratedInstance {
  Network network;
  Rational alpha;
  Rational beta;
  ExtendedRational gamma;
  Rational demand;
};

// Random small instances: <= 6 nodes, <= 10 arcs, integer capacities in
// [1,5] and delays in [0,5], standard costs with small rational parameters.
class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed) : rng_(seed) {}

  // A network whose maximum flow is positive (retries internally).
  GeneratedInstance next();
  // Arbitrary network, possibly with the sink unreachable.
  Network random_network();

  Rational random_rational(int num_lo, int num_hi, int den_hi);
  int uniform_int(int lo, int hi);

 private:
  std::mt19937_64 rng_;
};

// Exhaustive minimum-cost flow oracle for tiny integer instances: enumerates
// integer amounts on all simple s-t paths. Returns nullopt when the demand
// is infeasible.
std::optional<Rational> brute_force_min_cost(const Network& net, int demand);

// Independent negative-cycle detector (Floyd-Warshall over residual arcs).
bool has_negative_cycle_fw(const ResidualGraph& g);

}  // namespace flowtime::testing

#endif  // FLOWTIME_TESTS_SUPPORT_INSTANCES_HPP
