#pragma once

#include <span>
#include <vector>

#include "dcnet/commodity.hpp"
#include "dcnet/errors.hpp"
#include "dcnet/graph.hpp"

namespace dcnet {

// Per-slot flow assignment: amount of commodity k sent on edge e carrying
// packets whose current lifetime is l (1..L).  Dense storage with a touched
// list so sparse slots clear cheaply.
class FlowDecision {
 public:
  FlowDecision() = default;
  FlowDecision(int num_edges, int max_lifetime, int num_commodities);

  int num_edges() const { return num_edges_; }
  int max_lifetime() const { return max_lifetime_; }
  int num_commodities() const { return num_commodities_; }

  void clear();
  // Accumulates; negative amounts are invariant errors, zero is a no-op.
  void add(int edge, int lifetime, int commodity, double amount);
  double at(int edge, int lifetime, int commodity) const {
    return values_[index(edge, lifetime, commodity)];
  }
  double total() const;
  bool empty() const { return touched_.empty(); }

  // Visits every non-zero entry as f(edge, lifetime, commodity, amount).
  template <class F>
  void for_each(F&& f) const {
    for (int idx : touched_) {
      int k = idx / (num_edges_ * max_lifetime_);
      int rem = idx % (num_edges_ * max_lifetime_);
      f(rem / max_lifetime_, rem % max_lifetime_ + 1, k, values_[idx]);
    }
  }

  int index(int edge, int lifetime, int commodity) const {
    return (commodity * num_edges_ + edge) * max_lifetime_ + (lifetime - 1);
  }
  const std::vector<double>& raw() const { return values_; }

 private:
  int num_edges_ = 0;
  int max_lifetime_ = 0;
  int num_commodities_ = 0;
  std::vector<double> values_;
  std::vector<int> touched_;
};

// One slot's realized arrivals: sparse entries plus per-commodity totals.
class ArrivalSample {
 public:
  struct Entry {
    NodeId node;
    int lifetime;
    int commodity;
    double amount;
  };

  explicit ArrivalSample(int num_commodities = 0)
      : totals_(num_commodities, 0.0) {}

  void clear() {
    entries_.clear();
    totals_.assign(totals_.size(), 0.0);
  }
  void add(NodeId node, int lifetime, int commodity, double amount) {
    require_invariant(amount >= 0.0, "negative arrival amount");
    if (amount == 0.0) return;
    entries_.push_back({node, lifetime, commodity, amount});
    totals_[commodity] += amount;
  }

  const std::vector<Entry>& entries() const { return entries_; }
  double total(int commodity) const { return totals_[commodity]; }
  double total() const {
    double s = 0.0;
    for (double v : totals_) s += v;
    return s;
  }
  int num_commodities() const { return static_cast<int>(totals_.size()); }

 private:
  std::vector<Entry> entries_;
  std::vector<double> totals_;
};

// What one slot did, per commodity.
struct SlotLedger {
  std::vector<double> delivered;  // consumed at the destination, in time
  std::vector<double> dropped;    // expired and removed
  std::vector<double> injected;   // fresh arrivals admitted
  double cost = 0.0;              // <edge cost, flow>

  double delivered_total() const {
    double s = 0.0;
    for (double v : delivered) s += v;
    return s;
  }
  double dropped_total() const {
    double s = 0.0;
    for (double v : dropped) s += v;
    return s;
  }
};

// Lifetime-indexed physical queues: Q(k, i, l) holds commodity-k packets at
// node i with l slots of life left.  Destinations hold nothing (arriving
// effective packets are consumed), and lifetime-0 packets are dropped at the
// slot boundary rather than stored.
class LifetimeQueueBank {
 public:
  LifetimeQueueBank(const NetworkGraph& g,
                    const std::vector<Commodity>& commodities);

  int num_nodes() const { return num_nodes_; }
  int max_lifetime() const { return max_lifetime_; }
  int num_commodities() const { return num_commodities_; }
  NodeId destination(int k) const { return destinations_[k]; }

  double backlog(int k, NodeId i, int l) const {
    return q_[index(k, i, l)];
  }
  double node_backlog(int k, NodeId i) const;
  double commodity_backlog(int k) const;
  double total_backlog() const;

  // Cumulative counters since construction.
  double injected(int k) const { return injected_[k]; }
  double delivered(int k) const { return delivered_[k]; }
  double dropped(int k) const { return dropped_[k]; }

  // Applies one slot: sends `flows`, ages lifetimes, admits `arrivals`.
  // Sending more than is available (beyond float tolerance) throws
  // InvariantError, as does a conservation mismatch.
  SlotLedger advance(const FlowDecision& flows, const ArrivalSample& arrivals,
                     const NetworkGraph& g);

  // Test hook: place backlog directly (used to stage hand examples).
  void set_backlog(int k, NodeId i, int l, double amount);

  int index(int k, NodeId i, int l) const {
    return (k * num_nodes_ + i) * max_lifetime_ + (l - 1);
  }

 private:
  int num_nodes_ = 0;
  int max_lifetime_ = 0;
  int num_commodities_ = 0;
  std::vector<NodeId> destinations_;
  std::vector<double> q_;
  std::vector<double> injected_, delivered_, dropped_;
  // Scratch for per-slot in/out aggregation, sized like q_.
  std::vector<double> out_scratch_, in_scratch_;
};

struct AvailabilityViolation {
  int commodity;
  NodeId node;
  int lifetime;
  double excess;  // scheduled minus available
};

struct AvailabilityReport {
  bool ok = true;
  std::vector<AvailabilityViolation> violations;
};

// Checks that scheduled outflows never exceed current backlogs (per node,
// lifetime, and commodity) and that nothing is sent out of a destination.
AvailabilityReport check_availability(const LifetimeQueueBank& bank,
                                      const FlowDecision& flows,
                                      const NetworkGraph& g);

// Convenience free-function spelling of LifetimeQueueBank::advance.
inline SlotLedger advance_slot(LifetimeQueueBank& bank,
                               const FlowDecision& flows,
                               const ArrivalSample& arrivals,
                               const NetworkGraph& g) {
  return bank.advance(flows, arrivals, g);
}

// Mean timely deliveries per slot over the trailing `window` slots
// (window == 0 or larger than the series: whole series).
double timely_throughput(std::span<const double> delivered_per_slot,
                         std::size_t window = 0);

}  // namespace dcnet
