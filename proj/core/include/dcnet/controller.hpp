#pragma once

#include <vector>

#include "dcnet/commodity.hpp"
#include "dcnet/graph.hpp"
#include "dcnet/layered.hpp"
#include "dcnet/queueing.hpp"

namespace dcnet {

struct ControllerConfig {
  double V = 0.0;  // cost emphasis in the weight rule
};

// Virtual deficit queues of the relaxed problem.  Per commodity there is one
// destination queue U_dest (tracks the reliability deficit) and one queue
// per (node, lifetime) pair for every non-destination node (tracks flow
// conservation at that lifetime).
class VirtualQueueBank {
 public:
  VirtualQueueBank(const NetworkGraph& g,
                   const std::vector<Commodity>& commodities);

  int num_nodes() const { return num_nodes_; }
  int max_lifetime() const { return max_lifetime_; }
  int num_commodities() const { return num_commodities_; }
  NodeId destination(int k) const { return destinations_[k]; }
  double gamma(int k) const { return gammas_[k]; }

  double dest(int k) const { return u_dest_[k]; }
  double at(int k, NodeId i, int l) const { return u_[index(k, i, l)]; }
  double norm1() const;
  // Conservation queues in index() order: (k * num_nodes + i) pages of
  // max_lifetime entries (destination rows present but always zero).
  const std::vector<double>& conservation_values() const { return u_; }

  void set_dest(int k, double v) { u_dest_[k] = v; }
  void set(int k, NodeId i, int l, double v) { u_[index(k, i, l)] = v; }

  int index(int k, NodeId i, int l) const {
    return (k * num_nodes_ + i) * max_lifetime_ + (l - 1);
  }

 private:
  int num_nodes_ = 0;
  int max_lifetime_ = 0;
  int num_commodities_ = 0;
  std::vector<NodeId> destinations_;
  std::vector<double> gammas_;
  std::vector<double> u_dest_;
  std::vector<double> u_;
};

// Flat weight buffer aligned with FlowDecision indexing:
// w[(k * E + e) * L + (l-1)].
using WeightBuffer = std::vector<double>;

// Weight of moving commodity-k traffic of lifetime l over edge (i, j):
//   -V * cost(i,j) - sum_{m<=l} U_k(i,m) + [j == dest_k ? U_dest_k
//                                                       : sum_{m<=l-1} U_k(j,m)]
// Edges out of the commodity's destination get -inf (never scheduled).
void compute_weights(const VirtualQueueBank& u, const NetworkGraph& g,
                     const ControllerConfig& cfg, WeightBuffer& weights);

// Per capacity group, grants the full joint capacity to the single
// (edge, lifetime, commodity) triple with the largest strictly positive
// weight; ties break toward the smallest lifetime, then the lowest
// commodity id, then the group's edge order.  Groups with no positive
// weight stay idle.
FlowDecision max_weight_allocate(const WeightBuffer& weights,
                                 const NetworkGraph& g,
                                 const std::vector<CapacityGroup>& groups,
                                 int max_lifetime, int num_commodities);

// One-slot update of all virtual queues: the destination queue absorbs
// gamma_k times the commodity's arrival total and drains by the virtual
// flow delivered into the destination; every touched (node, lifetime)
// conservation queue moves by outgoing minus incoming minus injected
// amounts at its lifetime range, floored at zero.
void update_virtual_queues(VirtualQueueBank& u, const FlowDecision& nu,
                           const ArrivalSample& arrivals,
                           const NetworkGraph& g);

// Drift-plus-penalty controller over the virtual network: each slot it
// prices edges from the deficit queues, schedules by max-weight, and then
// rolls the queues forward with the realized arrival totals.
class LdpController {
 public:
  LdpController(const NetworkGraph& g, std::vector<CapacityGroup> groups,
                const std::vector<Commodity>& commodities,
                ControllerConfig cfg);

  // Computes the slot's virtual flows and updates the deficit queues.
  const FlowDecision& step(const ArrivalSample& arrivals);

  const VirtualQueueBank& queues() const { return u_; }
  const FlowDecision& last_flows() const { return nu_; }
  long long slot() const { return slot_; }

 private:
  const NetworkGraph& g_;
  std::vector<CapacityGroup> groups_;
  std::vector<Commodity> commodities_;
  ControllerConfig cfg_;
  VirtualQueueBank u_;
  WeightBuffer weights_;
  FlowDecision nu_;
  long long slot_ = 0;
};

}  // namespace dcnet
