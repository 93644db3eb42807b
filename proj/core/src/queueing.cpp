#include "dcnet/queueing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dcnet {

namespace {
// Availability and conservation comparisons tolerate accumulated float
// noise proportional to the magnitudes involved.
constexpr double kSlack = 1e-7;
double tol_for(double scale) { return kSlack * (1.0 + std::abs(scale)); }
}  // namespace

FlowDecision::FlowDecision(int num_edges, int max_lifetime,
                           int num_commodities)
    : num_edges_(num_edges),
      max_lifetime_(max_lifetime),
      num_commodities_(num_commodities),
      values_(static_cast<std::size_t>(num_edges) * max_lifetime *
                  num_commodities,
              0.0) {
  require_invariant(num_edges >= 0 && max_lifetime >= 1 && num_commodities >= 1,
                    "flow decision dimensions");
}

void FlowDecision::clear() {
  for (int idx : touched_) values_[idx] = 0.0;
  touched_.clear();
}

void FlowDecision::add(int edge, int lifetime, int commodity, double amount) {
  require_invariant(amount >= 0.0, "negative flow amount");
  require_invariant(lifetime >= 1 && lifetime <= max_lifetime_,
                    "flow lifetime out of range");
  if (amount == 0.0) return;
  int idx = index(edge, lifetime, commodity);
  if (values_[idx] == 0.0) touched_.push_back(idx);
  values_[idx] += amount;
}

double FlowDecision::total() const {
  double s = 0.0;
  for (int idx : touched_) s += values_[idx];
  return s;
}

LifetimeQueueBank::LifetimeQueueBank(const NetworkGraph& g,
                                     const std::vector<Commodity>& commodities)
    : num_nodes_(g.num_nodes()),
      num_commodities_(static_cast<int>(commodities.size())) {
  require_config(!commodities.empty(), "queue bank needs commodities");
  max_lifetime_ = 1;
  for (const auto& c : commodities) {
    validate_commodity(c, num_nodes_);
    max_lifetime_ = std::max(max_lifetime_, c.max_lifetime);
    destinations_.push_back(c.destination);
  }
  std::size_t n = static_cast<std::size_t>(num_commodities_) * num_nodes_ *
                  max_lifetime_;
  q_.assign(n, 0.0);
  out_scratch_.assign(n, 0.0);
  in_scratch_.assign(n, 0.0);
  injected_.assign(num_commodities_, 0.0);
  delivered_.assign(num_commodities_, 0.0);
  dropped_.assign(num_commodities_, 0.0);
}

double LifetimeQueueBank::node_backlog(int k, NodeId i) const {
  double s = 0.0;
  for (int l = 1; l <= max_lifetime_; ++l) s += q_[index(k, i, l)];
  return s;
}

double LifetimeQueueBank::commodity_backlog(int k) const {
  double s = 0.0;
  for (NodeId i = 0; i < num_nodes_; ++i) s += node_backlog(k, i);
  return s;
}

double LifetimeQueueBank::total_backlog() const {
  double s = 0.0;
  for (double v : q_) s += v;
  return s;
}

void LifetimeQueueBank::set_backlog(int k, NodeId i, int l, double amount) {
  require_invariant(amount >= 0.0, "negative backlog");
  require_invariant(i != destinations_[k], "destinations hold no backlog");
  double before = q_[index(k, i, l)];
  q_[index(k, i, l)] = amount;
  injected_[k] += amount - before;  // keep conservation accounting coherent
}

AvailabilityReport check_availability(const LifetimeQueueBank& bank,
                                      const FlowDecision& flows,
                                      const NetworkGraph& g) {
  // Aggregate outflow per (commodity, node, lifetime).
  const int L = bank.max_lifetime();
  const int V = bank.num_nodes();
  std::vector<double> out(static_cast<std::size_t>(bank.num_commodities()) *
                              V * L,
                          0.0);
  flows.for_each([&](int e, int l, int k, double amt) {
    out[(static_cast<std::size_t>(k) * V + g.edge(e).src) * L + (l - 1)] +=
        amt;
  });
  AvailabilityReport report;
  for (int k = 0; k < bank.num_commodities(); ++k) {
    for (NodeId i = 0; i < V; ++i) {
      for (int l = 1; l <= L; ++l) {
        double o = out[(static_cast<std::size_t>(k) * V + i) * L + (l - 1)];
        if (o == 0.0) continue;
        double have = bank.backlog(k, i, l);
        if (o > have + tol_for(have)) {
          report.ok = false;
          report.violations.push_back({k, i, l, o - have});
        }
      }
    }
  }
  return report;
}

SlotLedger LifetimeQueueBank::advance(const FlowDecision& flows,
                                      const ArrivalSample& arrivals,
                                      const NetworkGraph& g) {
  require_invariant(flows.max_lifetime() == max_lifetime_ &&
                        flows.num_commodities() == num_commodities_,
                    "flow decision dimensions do not match the bank");
  require_invariant(arrivals.num_commodities() == num_commodities_,
                    "arrival dimensions do not match the bank");
  const int L = max_lifetime_;
  const int V = num_nodes_;

  SlotLedger ledger;
  ledger.delivered.assign(num_commodities_, 0.0);
  ledger.dropped.assign(num_commodities_, 0.0);
  ledger.injected.assign(num_commodities_, 0.0);

  // Scatter flows into per-(k,i,l) inflow/outflow aggregates.  Receivers see
  // packets one lifetime lower on the next slot boundary; that shift happens
  // in the aging pass below, so both aggregates are indexed by the lifetime
  // the packets carried while moving.
  std::fill(out_scratch_.begin(), out_scratch_.end(), 0.0);
  std::fill(in_scratch_.begin(), in_scratch_.end(), 0.0);
  flows.for_each([&](int e, int l, int k, double amt) {
    const Edge& ed = g.edge(e);
    out_scratch_[index(k, ed.src, l)] += amt;
    if (ed.dst == destinations_[k]) {
      // Effective packets are consumed on arrival (timely for any l >= 1).
      ledger.delivered[k] += amt;
    } else {
      in_scratch_[index(k, ed.dst, l)] += amt;
    }
    ledger.cost += amt * ed.cost;
  });

  // Availability: you can only send what you hold.
  for (int k = 0; k < num_commodities_; ++k) {
    for (NodeId i = 0; i < V; ++i) {
      for (int l = 1; l <= L; ++l) {
        double o = out_scratch_[index(k, i, l)];
        if (o > q_[index(k, i, l)] + tol_for(q_[index(k, i, l)])) {
          throw InvariantError(
              "availability violated: sending " + std::to_string(o) +
              " of commodity " + std::to_string(k) + " from node " +
              std::to_string(i) + " at lifetime " + std::to_string(l) +
              " with only " + std::to_string(q_[index(k, i, l)]) +
              " available");
        }
      }
    }
  }

  // Age one slot: what sat at lifetime l+1 (minus departures, plus
  // transit arrivals) is next slot's lifetime-l backlog.  Lifetime-1
  // leftovers expire.  Destinations keep nothing.
  for (int k = 0; k < num_commodities_; ++k) {
    const NodeId dest = destinations_[k];
    for (NodeId i = 0; i < V; ++i) {
      if (i == dest) continue;
      double expiring = q_[index(k, i, 1)] - out_scratch_[index(k, i, 1)] +
                        in_scratch_[index(k, i, 1)];
      ledger.dropped[k] += std::max(0.0, expiring);
      for (int l = 1; l <= L; ++l) {
        double next = 0.0;
        if (l < L) {
          next = q_[index(k, i, l + 1)] - out_scratch_[index(k, i, l + 1)] +
                 in_scratch_[index(k, i, l + 1)];
        }
        require_invariant(next >= -tol_for(q_[index(k, i, std::min(l + 1, L))]),
                          "negative backlog after aging");
        q_[index(k, i, l)] = std::max(0.0, next);
      }
    }
  }

  // Admit fresh arrivals; a packet born with lifetime l is usable from the
  // next slot with exactly l slots of life.
  for (const auto& a : arrivals.entries()) {
    require_invariant(a.node != destinations_[a.commodity],
                      "arrivals may not enter at the destination");
    require_invariant(a.lifetime >= 1 && a.lifetime <= L,
                      "arrival lifetime out of range");
    q_[index(a.commodity, a.node, a.lifetime)] += a.amount;
    ledger.injected[a.commodity] += a.amount;
  }

  for (int k = 0; k < num_commodities_; ++k) {
    injected_[k] += ledger.injected[k];
    delivered_[k] += ledger.delivered[k];
    dropped_[k] += ledger.dropped[k];
    // Conservation: everything admitted is delivered, expired, or queued.
    double lhs = injected_[k];
    double rhs = delivered_[k] + dropped_[k] + commodity_backlog(k);
    require_invariant(std::abs(lhs - rhs) <= tol_for(lhs) * 1e3,
                      "conservation mismatch for commodity " +
                          std::to_string(k));
  }
  return ledger;
}

double timely_throughput(std::span<const double> delivered_per_slot,
                         std::size_t window) {
  if (delivered_per_slot.empty()) return 0.0;
  std::size_t n = delivered_per_slot.size();
  std::size_t w = (window == 0 || window > n) ? n : window;
  double s = 0.0;
  for (std::size_t t = n - w; t < n; ++t) s += delivered_per_slot[t];
  return s / static_cast<double>(w);
}

}  // namespace dcnet
