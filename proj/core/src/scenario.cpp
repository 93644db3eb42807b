#include "dcnet/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace dcnet {

using nlohmann::json;

std::string to_string(ArrivalProcessKind kind) {
  switch (kind) {
    case ArrivalProcessKind::Poisson: return "poisson";
    case ArrivalProcessKind::Deterministic: return "deterministic";
    case ArrivalProcessKind::BoundedUniform: return "bounded-uniform";
  }
  return "poisson";
}

ArrivalProcessKind arrival_process_from_string(const std::string& name) {
  if (name == "poisson") return ArrivalProcessKind::Poisson;
  if (name == "deterministic") return ArrivalProcessKind::Deterministic;
  if (name == "bounded-uniform") return ArrivalProcessKind::BoundedUniform;
  throw ConfigError("unknown arrival process: " + name);
}

double CloudScenario::compute_units(NodeId i) const {
  if (compute.empty()) return 0.0;
  return compute[i].cpus * units.rate_to_units(per_cpu_mbps);
}

double CloudScenario::compute_cost_per_unit(NodeId i) const {
  if (compute.empty() || compute[i].cpus <= 0.0) return 0.0;
  return units.cost_per_cpu_to_per_unit(compute[i].cost_per_cpu, per_cpu_mbps);
}

void validate_scenario(const CloudScenario& s) {
  require_config(s.num_nodes > 0, "scenario needs at least one node");
  // NetworkGraph construction re-checks edge ranges, capacities, costs.
  NetworkGraph g(s.num_nodes, s.links);
  require_config(s.compute.empty() ||
                     static_cast<int>(s.compute.size()) == s.num_nodes,
                 "compute list must cover every node (or be absent)");
  for (const auto& c : s.compute) {
    require_config(c.cpus >= 0.0, "CPU budget must be non-negative");
    require_config(c.cost_per_cpu >= 0.0, "CPU cost must be non-negative");
  }
  require_config(s.service_stages >= 0, "service stages must be >= 0");
  if (s.service_stages > 0) {
    require_config(!s.compute.empty() && s.per_cpu_mbps > 0.0,
                   "service stages require compute provision");
  }
  require_config(!s.clients.empty(), "scenario needs at least one client");
  for (const auto& cl : s.clients) {
    require_config(cl.source >= 0 && cl.source < s.num_nodes,
                   "client source out of range");
    require_config(cl.destination >= 0 && cl.destination < s.num_nodes,
                   "client destination out of range");
    require_config(cl.source != cl.destination,
                   "client source equals destination");
    require_config(cl.gamma >= 0.0 && cl.gamma <= 1.0,
                   "client gamma must lie in [0, 1]");
    require_config(cl.max_lifetime >= 1, "client lifetime must be >= 1");
    require_config(!cl.lambda_mbps.empty(), "client has no arrival rates");
    for (const auto& [l, rate] : cl.lambda_mbps) {
      require_config(l >= 1 && l <= cl.max_lifetime,
                     "arrival lifetime outside [1, L]");
      require_config(rate >= 0.0, "arrival rates must be non-negative");
    }
    require_config(cl.total_mbps() > 0.0, "client has zero arrival volume");
  }
  require_config(s.a_max_factor > 0.0, "a_max factor must be positive");
  require_config(s.default_horizon >= 0, "horizon must be non-negative");
}

CloudScenario builtin_abilene(int max_lifetime) {
  require_config(max_lifetime >= 1, "lifetime must be >= 1");
  CloudScenario s;
  s.name = "abilene";
  s.units = UnitSystem::from_mbps(10.0);
  s.num_nodes = 11;

  // 1-based display ids: 1 Seattle, 2 Sunnyvale, 3 Denver, 4 Los Angeles,
  // 5 Houston, 6 Kansas City, 7 Atlanta, 8 Indianapolis, 9 Chicago,
  // 10 Washington DC, 11 New York.
  const int pairs[][2] = {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 6},
                          {4, 5}, {5, 6}, {5, 7}, {6, 8}, {7, 8},
                          {7, 10}, {8, 9}, {9, 11}, {10, 11}};
  const double cap_units = s.units.rate_to_units(1000.0);       // 1 Gbps
  const double cost_unit = s.units.cost_per_gb_to_per_unit(1.0);  // 1 per Gb
  for (const auto& p : pairs) {
    NodeId a = p[0] - 1;
    NodeId b = p[1] - 1;
    s.links.push_back({a, b, cap_units, cost_unit});
    s.links.push_back({b, a, cap_units, cost_unit});
  }

  s.per_cpu_mbps = 50.0;
  s.compute.resize(11);
  for (int i = 0; i < 11; ++i) {
    s.compute[i].cpus = 2.0;
    // 1-based nodes 5 and 6 host the cheap processors.
    s.compute[i].cost_per_cpu = (i == 4 || i == 5) ? 1.0 : 2.0;
  }
  s.service_stages = 1;

  ClientSpec c1;
  c1.source = 0;        // node 1
  c1.destination = 8;   // node 9
  c1.gamma = 0.9;
  c1.max_lifetime = max_lifetime;
  c1.lambda_mbps = {{max_lifetime, 100.0}};
  ClientSpec c2 = c1;
  c2.source = 2;        // node 3
  c2.destination = 10;  // node 11
  s.clients = {c1, c2};

  s.arrival_process = ArrivalProcessKind::Poisson;
  s.a_max_factor = 20.0;
  s.default_horizon = 1000000;
  s.default_seed = 1;
  validate_scenario(s);
  return s;
}

bool is_builtin_scenario(const std::string& name) { return name == "abilene"; }

CloudScenario builtin_scenario(const std::string& name) {
  if (name == "abilene") return builtin_abilene();
  throw ConfigError("unknown built-in scenario: " + name);
}

namespace {

double get_number(const json& j, const char* key, double fallback,
                  bool required = false) {
  if (!j.contains(key)) {
    require_config(!required, std::string("missing field: ") + key);
    return fallback;
  }
  require_config(j[key].is_number(), std::string(key) + " must be a number");
  return j[key].get<double>();
}

NodeId get_node_id(const json& j, const char* key, int num_nodes) {
  require_config(j.contains(key) && j[key].is_number_integer(),
                 std::string(key) + " must be an integer node id");
  int id = j[key].get<int>();
  require_config(id >= 1 && id <= num_nodes,
                 std::string(key) + " must lie in 1.." +
                     std::to_string(num_nodes));
  return id - 1;  // files are 1-based, storage is 0-based
}

}  // namespace

CloudScenario load_scenario_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
  }
  require_config(j.is_object(), "scenario root must be a JSON object");

  CloudScenario s;
  s.name = j.value("name", std::string("scenario"));
  double fu = get_number(j, "flow_unit_mbps", 10.0);
  require_config(fu > 0.0, "flow_unit_mbps must be positive");
  s.units = UnitSystem::from_mbps(fu);

  require_config(j.contains("nodes") && j["nodes"].is_number_integer(),
                 "missing integer field: nodes");
  s.num_nodes = j["nodes"].get<int>();
  require_config(s.num_nodes > 0, "nodes must be positive");

  require_config(j.contains("links") && j["links"].is_array(),
                 "missing array field: links");
  for (const auto& lj : j["links"]) {
    require_config(lj.is_object(), "each link must be an object");
    NodeId a = get_node_id(lj, "from", s.num_nodes);
    NodeId b = get_node_id(lj, "to", s.num_nodes);
    double cap = get_number(lj, "capacity_mbps", 0.0, /*required=*/true);
    double cost_gb = get_number(lj, "cost_per_gb", 0.0);
    require_config(cap > 0.0, "capacity_mbps must be positive");
    Edge fwd{a, b, s.units.rate_to_units(cap),
             s.units.cost_per_gb_to_per_unit(cost_gb)};
    s.links.push_back(fwd);
    if (lj.value("bidirectional", true)) {
      s.links.push_back({b, a, fwd.capacity, fwd.cost});
    }
  }

  if (j.contains("compute")) {
    const json& cj = j["compute"];
    require_config(cj.is_object(), "compute must be an object");
    s.per_cpu_mbps = get_number(cj, "per_cpu_mbps", 0.0, /*required=*/true);
    require_config(s.per_cpu_mbps > 0.0, "per_cpu_mbps must be positive");
    s.compute.resize(s.num_nodes);
    require_config(cj.contains("nodes") && cj["nodes"].is_array(),
                   "compute.nodes must be an array");
    for (const auto& nj : cj["nodes"]) {
      NodeId i = get_node_id(nj, "id", s.num_nodes);
      s.compute[i].cpus = get_number(nj, "cpus", 0.0, /*required=*/true);
      s.compute[i].cost_per_cpu = get_number(nj, "cost_per_cpu", 0.0);
    }
  }

  s.service_stages = static_cast<int>(get_number(j, "service_stages", 0.0));

  require_config(j.contains("clients") && j["clients"].is_array() &&
                     !j["clients"].empty(),
                 "missing non-empty array field: clients");
  for (const auto& cj : j["clients"]) {
    ClientSpec c;
    c.source = get_node_id(cj, "source", s.num_nodes);
    c.destination = get_node_id(cj, "destination", s.num_nodes);
    c.gamma = get_number(cj, "gamma", 0.0, /*required=*/true);
    c.max_lifetime =
        static_cast<int>(get_number(cj, "max_lifetime", 0.0, true));
    if (cj.contains("lambda_mbps_per_lifetime")) {
      const json& lm = cj["lambda_mbps_per_lifetime"];
      require_config(lm.is_object(),
                     "lambda_mbps_per_lifetime must map lifetime -> Mbps");
      for (auto it = lm.begin(); it != lm.end(); ++it) {
        int l = 0;
        try {
          l = std::stoi(it.key());
        } catch (...) {
          throw ConfigError("lifetime keys must be integers");
        }
        c.lambda_mbps.emplace_back(l, it.value().get<double>());
      }
      std::sort(c.lambda_mbps.begin(), c.lambda_mbps.end());
    } else {
      // All packets born with the maximum lifetime.
      double rate = get_number(cj, "lambda_mbps", 0.0, /*required=*/true);
      c.lambda_mbps = {{c.max_lifetime, rate}};
    }
    s.clients.push_back(std::move(c));
  }

  if (j.contains("arrivals")) {
    const json& aj = j["arrivals"];
    require_config(aj.is_object(), "arrivals must be an object");
    if (aj.contains("process")) {
      s.arrival_process =
          arrival_process_from_string(aj["process"].get<std::string>());
    }
    s.a_max_factor = get_number(aj, "a_max_factor", s.a_max_factor);
  }
  if (j.contains("defaults")) {
    const json& dj = j["defaults"];
    s.default_horizon =
        static_cast<long long>(get_number(dj, "horizon", 100000.0));
    s.default_seed =
        static_cast<std::uint64_t>(get_number(dj, "seed", 1.0));
  }

  validate_scenario(s);
  return s;
}

CloudScenario load_scenario_file(const std::string& path) {
  if (is_builtin_scenario(path)) return builtin_scenario(path);
  std::ifstream in(path);
  require_config(in.good(), "cannot open scenario file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return load_scenario_json(buf.str());
}

std::string scenario_to_json(const CloudScenario& s) {
  json j;
  j["name"] = s.name;
  j["flow_unit_mbps"] = s.units.flow_unit_mbps().to_double();
  j["nodes"] = s.num_nodes;
  json links = json::array();
  const double fu = s.units.flow_unit_mbps().to_double();
  for (const auto& e : s.links) {
    links.push_back({{"from", e.src + 1},
                     {"to", e.dst + 1},
                     {"capacity_mbps", e.capacity * fu},
                     {"cost_per_gb", e.cost * 1000.0 / fu},
                     {"bidirectional", false}});
  }
  j["links"] = links;
  if (!s.compute.empty()) {
    json cn = json::array();
    for (int i = 0; i < s.num_nodes; ++i) {
      cn.push_back({{"id", i + 1},
                    {"cpus", s.compute[i].cpus},
                    {"cost_per_cpu", s.compute[i].cost_per_cpu}});
    }
    j["compute"] = {{"per_cpu_mbps", s.per_cpu_mbps}, {"nodes", cn}};
  }
  j["service_stages"] = s.service_stages;
  json clients = json::array();
  for (const auto& c : s.clients) {
    json cj = {{"source", c.source + 1},
               {"destination", c.destination + 1},
               {"gamma", c.gamma},
               {"max_lifetime", c.max_lifetime}};
    if (c.lambda_mbps.size() == 1 &&
        c.lambda_mbps[0].first == c.max_lifetime) {
      cj["lambda_mbps"] = c.lambda_mbps[0].second;
    } else {
      json lm = json::object();
      for (const auto& [l, rate] : c.lambda_mbps) {
        lm[std::to_string(l)] = rate;
      }
      cj["lambda_mbps_per_lifetime"] = lm;
    }
    clients.push_back(cj);
  }
  j["clients"] = clients;
  j["arrivals"] = {{"process", to_string(s.arrival_process)},
                   {"a_max_factor", s.a_max_factor}};
  j["defaults"] = {{"horizon", s.default_horizon}, {"seed", s.default_seed}};
  return j.dump(2);
}

}  // namespace dcnet
