#include "dcnet/dcnc.hpp"

#include <algorithm>
#include <cmath>

namespace dcnet {

DcncController::DcncController(const NetworkGraph& g,
                               std::vector<CapacityGroup> groups,
                               const std::vector<Commodity>& commodities,
                               double V)
    : g_(g),
      groups_(std::move(groups)),
      V_(V),
      num_nodes_(g.num_nodes()),
      num_commodities_(static_cast<int>(commodities.size())) {
  require_config(V_ >= 0.0, "cost emphasis V must be non-negative");
  require_config(!commodities.empty(), "baseline needs commodities");
  max_lifetime_ = 1;
  for (const auto& c : commodities) {
    validate_commodity(c, num_nodes_);
    max_lifetime_ = std::max(max_lifetime_, c.max_lifetime);
    destinations_.push_back(c.destination);
  }
  const std::size_t cells = static_cast<std::size_t>(num_commodities_) *
                            num_nodes_ * (max_lifetime_ + 1);
  comp_.assign(cells, 0.0);
  out_scratch_.assign(cells, 0.0);
  in_scratch_.assign(cells, 0.0);
  scalar_.assign(static_cast<std::size_t>(num_commodities_) * num_nodes_,
                 0.0);
}

double DcncController::backlog(int k, NodeId i) const {
  return scalar_[static_cast<std::size_t>(k) * num_nodes_ + i];
}

double DcncController::total_backlog() const {
  double s = 0.0;
  for (double v : scalar_) s += v;
  return s;
}

DcncController::SlotResult DcncController::step(
    const ArrivalSample& arrivals) {
  const int L = max_lifetime_;
  SlotResult result;
  result.delivered_timely.assign(num_commodities_, 0.0);
  result.delivered_raw.assign(num_commodities_, 0.0);
  std::fill(out_scratch_.begin(), out_scratch_.end(), 0.0);
  std::fill(in_scratch_.begin(), in_scratch_.end(), 0.0);

  // Remaining sendable backlog per (k, node); groups are processed in a
  // fixed order and each winner is clipped to what is still unclaimed, so
  // the realized flows always respect availability.
  static thread_local std::vector<double> remaining;
  remaining = scalar_;

  for (const auto& grp : groups_) {
    // Max-weight over (edge in group, commodity):
    //   w = Q_i(k) - Q_j(k) - V * cost(i, j), destination Q := 0.
    int best_edge = -1, best_k = 0;
    double best_w = 0.0;
    for (int e : grp.edges) {
      const Edge& ed = g_.edge(e);
      for (int k = 0; k < num_commodities_; ++k) {
        if (ed.src == destinations_[k]) continue;  // destinations hold nothing
        const double qi =
            scalar_[static_cast<std::size_t>(k) * num_nodes_ + ed.src];
        const double qj =
            ed.dst == destinations_[k]
                ? 0.0
                : scalar_[static_cast<std::size_t>(k) * num_nodes_ + ed.dst];
        const double w = qi - qj - V_ * ed.cost;
        if (w > best_w) {  // strict: first hit in scan order wins ties
          best_w = w;
          best_edge = e;
          best_k = k;
        }
      }
    }
    if (best_edge < 0) continue;
    const Edge& ed = g_.edge(best_edge);
    double& avail =
        remaining[static_cast<std::size_t>(best_k) * num_nodes_ + ed.src];
    const double amount = std::min(grp.capacity, avail);
    if (amount <= 0.0) continue;
    avail -= amount;
    result.cost += amount * ed.cost;

    // Drain the sender's composition smallest-remaining-lifetime first
    // (expired bucket 0 goes before anything else).
    double left = amount;
    const std::size_t src_base =
        (static_cast<std::size_t>(best_k) * num_nodes_ + ed.src) * (L + 1);
    const bool to_dest = ed.dst == destinations_[best_k];
    const std::size_t dst_base =
        (static_cast<std::size_t>(best_k) * num_nodes_ + ed.dst) * (L + 1);
    for (int l = 0; l <= L && left > 0.0; ++l) {
      // comp_ is not decremented until aging, so subtract what earlier
      // groups already claimed from this bucket.
      const double take =
          std::min(left, comp_[src_base + l] - out_scratch_[src_base + l]);
      if (take <= 0.0) continue;
      left -= take;
      out_scratch_[src_base + l] += take;
      if (to_dest) {
        result.delivered_raw[best_k] += take;
        if (l >= 1) result.delivered_timely[best_k] += take;
      } else {
        in_scratch_[dst_base + l] += take;
      }
    }
  }

  // Aging: survivors shift down one lifetime; bucket 0 absorbs both its own
  // remainder and the lifetime-1 survivors (expired packets persist).
  for (int k = 0; k < num_commodities_; ++k) {
    for (NodeId i = 0; i < num_nodes_; ++i) {
      const std::size_t base =
          (static_cast<std::size_t>(k) * num_nodes_ + i) * (L + 1);
      if (i == destinations_[k]) continue;  // stays identically empty
      double prev0 = comp_[base] - out_scratch_[base] + in_scratch_[base];
      double prev1 =
          comp_[base + 1] - out_scratch_[base + 1] + in_scratch_[base + 1];
      comp_[base] = std::max(0.0, prev0) + std::max(0.0, prev1);
      for (int l = 1; l <= L - 1; ++l) {
        const double v = comp_[base + l + 1] - out_scratch_[base + l + 1] +
                         in_scratch_[base + l + 1];
        comp_[base + l] = std::max(0.0, v);
      }
      comp_[base + L] = 0.0;
    }
  }
  // Admit this slot's arrivals at their birth lifetimes.
  for (const auto& a : arrivals.entries()) {
    comp_[(static_cast<std::size_t>(a.commodity) * num_nodes_ + a.node) *
              (L + 1) +
          a.lifetime] += a.amount;
  }
  // Refresh the scalar cache.
  for (int k = 0; k < num_commodities_; ++k) {
    for (NodeId i = 0; i < num_nodes_; ++i) {
      const std::size_t base =
          (static_cast<std::size_t>(k) * num_nodes_ + i) * (L + 1);
      double s = 0.0;
      for (int l = 0; l <= L; ++l) s += comp_[base + l];
      scalar_[static_cast<std::size_t>(k) * num_nodes_ + i] = s;
    }
  }
  return result;
}

}  // namespace dcnet
