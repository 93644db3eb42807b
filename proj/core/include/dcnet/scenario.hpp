#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dcnet/commodity.hpp"
#include "dcnet/graph.hpp"
#include "dcnet/units.hpp"

namespace dcnet {

enum class ArrivalProcessKind { Poisson, Deterministic, BoundedUniform };

std::string to_string(ArrivalProcessKind kind);
ArrivalProcessKind arrival_process_from_string(const std::string& name);

// Compute provision of one node.  `cpus == 0` means the node cannot host the
// service function.
struct ComputeSpec {
  double cpus = 0.0;
  double cost_per_cpu = 0.0;  // cost per CPU per slot
};

// One traffic client.  Arrival rates are stored per initial lifetime; the
// common "all packets born with lifetime L" profile is a single entry at
// `max_lifetime`.
struct ClientSpec {
  NodeId source = 0;
  NodeId destination = 0;
  double gamma = 0.0;
  int max_lifetime = 1;
  std::vector<std::pair<int, double>> lambda_mbps;  // lifetime -> Mbps

  double total_mbps() const {
    double s = 0.0;
    for (const auto& [l, rate] : lambda_mbps) s += rate;
    return s;
  }
};

// A service-network scenario: physical topology, compute provision, a chain
// of `service_stages` processing steps every packet must traverse, and the
// clients.  All link fields are already converted to internal flow units.
struct CloudScenario {
  std::string name;
  UnitSystem units;
  int num_nodes = 0;
  std::vector<Edge> links;           // directed, capacity/cost in flow units
  std::vector<ComputeSpec> compute;  // size num_nodes (empty = no compute)
  double per_cpu_mbps = 0.0;
  int service_stages = 0;  // 0 = pure routing
  std::vector<ClientSpec> clients;
  ArrivalProcessKind arrival_process = ArrivalProcessKind::Poisson;
  double a_max_factor = 20.0;  // per-entry arrival truncation multiple
  long long default_horizon = 100000;
  std::uint64_t default_seed = 1;

  NetworkGraph physical_graph() const { return NetworkGraph(num_nodes, links); }

  // Node compute capacity in flow units per slot.
  double compute_units(NodeId i) const;
  // Node compute cost per flow unit processed.
  double compute_cost_per_unit(NodeId i) const;
};

void validate_scenario(const CloudScenario& s);

// The 11-node US backbone scenario used throughout the experiment suite:
// 14 bidirectional 1 Gbps links (cost 1 per Gb), 2 CPUs at every node
// (50 Mbps per CPU; cost 1 per CPU per slot at nodes 5 and 6, 2 elsewhere),
// one processing stage, and two clients 1->9 and 3->11 at 100 Mbps with a
// 90% in-time delivery requirement.  Node numbering is 1-based in displays
// and files, 0-based internally.
CloudScenario builtin_abilene(int max_lifetime = 7);

// Returns the built-in scenario registered under `name`, or throws.
CloudScenario builtin_scenario(const std::string& name);
bool is_builtin_scenario(const std::string& name);

// JSON scenario files (schema shipped in docs/scenario-schema.json).
CloudScenario load_scenario_json(const std::string& json_text);
CloudScenario load_scenario_file(const std::string& path);
std::string scenario_to_json(const CloudScenario& s);  // round-trips

}  // namespace dcnet
