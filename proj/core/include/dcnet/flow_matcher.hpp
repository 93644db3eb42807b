#pragma once

#include <optional>
#include <vector>

#include "dcnet/arrivals.hpp"
#include "dcnet/graph.hpp"
#include "dcnet/layered.hpp"
#include "dcnet/queueing.hpp"

namespace dcnet {

// Running sums of the virtual flow plan and of arrivals, per commodity.
// Averages at slot t reflect exactly the t observed slots.
class EmpiricalFlowStats {
 public:
  EmpiricalFlowStats(int num_edges, int num_nodes, int max_lifetime,
                     int num_commodities);

  void update(const FlowDecision& nu, const ArrivalSample& arrivals);

  long long slots() const { return t_; }
  // Raw running sums (averages are sums / slots()).
  double flow_sum(int k, int e, int l) const {
    return flow_sum_[(static_cast<std::size_t>(k) * num_edges_ + e) *
                         max_lifetime_ +
                     (l - 1)];
  }
  double arrival_sum(int k, NodeId i, int l) const {
    return arrival_sum_[(static_cast<std::size_t>(k) * num_nodes_ + i) *
                            max_lifetime_ +
                        (l - 1)];
  }
  double flow_avg(int k, int e, int l) const {
    return t_ == 0 ? 0.0 : flow_sum(k, e, l) / static_cast<double>(t_);
  }

  int num_edges() const { return num_edges_; }
  int num_nodes() const { return num_nodes_; }
  int max_lifetime() const { return max_lifetime_; }
  int num_commodities() const { return num_commodities_; }
  const std::vector<double>& flow_sums() const { return flow_sum_; }

 private:
  int num_edges_, num_nodes_, max_lifetime_, num_commodities_;
  long long t_ = 0;
  std::vector<double> flow_sum_;     // (k, e, l)
  std::vector<double> arrival_sum_;  // (k, i, l)
};

// Per (commodity, out-edge, lifetime) forwarding probabilities plus the
// per (commodity, node, lifetime) hold probability (1 - sum over edges).
struct RoutingDistribution {
  int num_edges = 0, num_nodes = 0, max_lifetime = 0, num_commodities = 0;
  std::vector<double> alpha;  // (k * E + e) * L + (l-1)
  std::vector<double> hold;   // (k * V + i) * L + (l-1)

  double edge_prob(int k, int e, int l) const {
    return alpha[(static_cast<std::size_t>(k) * num_edges + e) * max_lifetime +
                 (l - 1)];
  }
  double hold_prob(int k, NodeId i, int l) const {
    return hold[(static_cast<std::size_t>(k) * num_nodes + i) * max_lifetime +
                (l - 1)];
  }
};

// Builds the forwarding distribution from the flow averages:
//   alpha_i^(l)(j) = avg_flow_ij^(l) /
//     (avg_inflow_i(>= l+1) + avg_arrivals_i(>= l) - avg_outflow_i(>= l+1))
// Nodes with zero observed outgoing flow at (i, l) hold everything.
//
// `row_excess_bound`, when given, holds one entry per (commodity, node,
// lifetime) row — indexed (k * num_nodes + i) * max_lifetime + (l - 1) —
// bounding how far that row's outgoing flow sum may legitimately run ahead
// of its availability sum.  A planner that keeps a standing per-row deficit
// (the deficit update floors at zero, so summed outflow minus availability
// telescopes to at most the current deficit value) produces exactly such an
// excess at every finite horizon even though its long-run averages conserve
// flow; those rows are still qualified and get renormalized to a valid
// distribution.  Rows whose excess exceeds the bound signal a real
// conservation violation: the build returns nullopt ("skip") and the caller
// keeps the previously built distribution.  Without the bound (nullptr) any
// row with positive outgoing flow and non-positive denominator, or with
// probabilities summing past 1 beyond rounding tolerance, skips.
std::optional<RoutingDistribution> build_distribution(
    const EmpiricalFlowStats& stats, const NetworkGraph& g,
    const std::vector<Commodity>& commodities,
    const double* row_excess_bound = nullptr);

struct RealizeOptions {
  bool sampled = false;   // false: fluid proportional split
  double quantum = 1.0;   // sampled mode: amount moved per random draw
  // If > 0, per-slot flow in each capacity group is capped at
  // peak_cap_factor * group capacity by proportional scaling.
  double peak_cap_factor = 0.0;
  const std::vector<CapacityGroup>* groups = nullptr;
};

// Splits each queue's backlog across its out-edges / holding according to
// the distribution.  The result never exceeds the available backlog.
FlowDecision realize_flows(const RoutingDistribution& dist,
                           const LifetimeQueueBank& bank,
                           const NetworkGraph& g, Rng& rng,
                           const RealizeOptions& opts = {});

// Relative L1 distance between two average-flow vectors (same layout),
// normalized by the reference norm (guarded at 1e-12).
double flow_matching_gap(const std::vector<double>& actual_avg,
                         const std::vector<double>& reference_avg);

// Orchestrates the per-slot loop: observe the virtual plan, rebuild the
// distribution when the averages admit one, and realize actual flows.
class FlowMatcher {
 public:
  FlowMatcher(const NetworkGraph& g, const std::vector<Commodity>& commodities,
              RealizeOptions opts = {});

  // Feeds one slot's virtual plan and arrivals, then refreshes the
  // distribution if the updated averages allow it.  `row_excess_bound`
  // (see build_distribution) marks how much per-row outflow excess is
  // attributable to the planner's standing deficits rather than to a real
  // conservation violation.
  void observe(const FlowDecision& nu, const ArrivalSample& arrivals,
               const double* row_excess_bound = nullptr);

  // Current slot's actual flows (zero until a distribution exists).
  FlowDecision realize(const LifetimeQueueBank& bank, Rng& rng);

  bool has_distribution() const { return has_dist_; }
  long long skips() const { return skips_; }
  const EmpiricalFlowStats& stats() const { return stats_; }
  const RoutingDistribution& distribution() const { return dist_; }
  // Realized-flow running sums, laid out like EmpiricalFlowStats::flow_sums.
  const std::vector<double>& actual_sums() const { return actual_sum_; }
  long long realized_slots() const { return realized_slots_; }

  // ||avg actual - avg virtual||_1 / max(||avg virtual||_1, 1e-12).
  double gap() const;

 private:
  const NetworkGraph& g_;
  std::vector<Commodity> commodities_;
  RealizeOptions opts_;
  EmpiricalFlowStats stats_;
  RoutingDistribution dist_;
  bool has_dist_ = false;
  long long skips_ = 0;
  std::vector<double> actual_sum_;  // realized flows, same layout as stats
  long long realized_slots_ = 0;
};

}  // namespace dcnet
