#pragma once

#include <vector>

#include "dcnet/commodity.hpp"
#include "dcnet/graph.hpp"
#include "dcnet/layered.hpp"
#include "dcnet/queueing.hpp"

namespace dcnet {

// Deadline-blind differential-backlog baseline.  Nodes keep one scalar
// backlog per commodity; remaining lifetimes are tracked only to classify
// deliveries as timely or late.  Expired packets are never dropped — they
// keep circulating (and cost transmissions) until delivered, which is what
// makes this baseline's cost and timely throughput so poor under deadlines.
class DcncController {
 public:
  struct SlotResult {
    std::vector<double> delivered_timely;  // lifetime >= 1 at delivery
    std::vector<double> delivered_raw;     // includes expired deliveries
    double cost = 0.0;
  };

  DcncController(const NetworkGraph& g, std::vector<CapacityGroup> groups,
                 const std::vector<Commodity>& commodities, double V);

  // One slot: max-weight transmissions clipped to available backlog, then
  // queue aging and arrival admission.
  SlotResult step(const ArrivalSample& arrivals);

  // Scalar backlog of commodity k at node i (all lifetimes, incl. expired).
  double backlog(int k, NodeId i) const;
  double total_backlog() const;
  // Lifetime composition: bucket 0 holds expired packets.
  double composition(int k, NodeId i, int l) const {
    return comp_[index(k, i, l)];
  }

  int num_commodities() const { return num_commodities_; }
  int max_lifetime() const { return max_lifetime_; }

 private:
  int index(int k, NodeId i, int l) const {
    return (k * num_nodes_ + i) * (max_lifetime_ + 1) + l;
  }

  const NetworkGraph& g_;
  std::vector<CapacityGroup> groups_;
  double V_;
  int num_nodes_ = 0;
  int max_lifetime_ = 0;
  int num_commodities_ = 0;
  std::vector<NodeId> destinations_;
  // comp_[k][i][l], l in 0..L; scalar backlog is the sum over l.
  std::vector<double> comp_;
  std::vector<double> scalar_;  // cached per (k, i) totals
  // Per-slot scratch: moved amounts by (k, i, l) for send and receive.
  std::vector<double> out_scratch_, in_scratch_;
};

}  // namespace dcnet
