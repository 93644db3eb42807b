#pragma once

#include <vector>

#include "dcnet/errors.hpp"
#include "dcnet/graph.hpp"

namespace dcnet {

// Mean arrival rate of packets entering the network at `node` with an
// initial lifetime of `lifetime` slots (flow units per slot).
struct ArrivalRate {
  NodeId node = 0;
  int lifetime = 1;
  double rate = 0.0;
};

// One commodity: traffic that must reach `destination` within its per-packet
// lifetime, with at least a `gamma` fraction of the mean arrival volume
// delivered in time.
struct Commodity {
  NodeId destination = 0;
  double gamma = 0.0;
  int max_lifetime = 1;              // largest initial lifetime L
  std::vector<ArrivalRate> rates;    // sparse arrival profile
  double a_max = 0.0;                // per-entry truncation bound for samples

  double total_rate() const {
    double s = 0.0;
    for (const auto& r : rates) s += r.rate;
    return s;
  }
};

// Sanity checks shared by scenario loading and direct construction.
inline void validate_commodity(const Commodity& c, int num_nodes) {
  require_config(c.destination >= 0 && c.destination < num_nodes,
                 "commodity destination out of range");
  require_config(c.gamma >= 0.0 && c.gamma <= 1.0,
                 "reliability level must lie in [0, 1]");
  require_config(c.max_lifetime >= 1, "max lifetime must be at least 1");
  for (const auto& r : c.rates) {
    require_config(r.node >= 0 && r.node < num_nodes,
                   "arrival node out of range");
    require_config(r.node != c.destination,
                   "arrivals may not enter at the destination");
    require_config(r.lifetime >= 1 && r.lifetime <= c.max_lifetime,
                   "arrival lifetime out of range");
    require_config(r.rate >= 0.0, "arrival rates must be non-negative");
  }
}

}  // namespace dcnet
