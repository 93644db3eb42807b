#include "dcnet/controller.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace dcnet {

VirtualQueueBank::VirtualQueueBank(const NetworkGraph& g,
                                   const std::vector<Commodity>& commodities)
    : num_nodes_(g.num_nodes()),
      num_commodities_(static_cast<int>(commodities.size())) {
  require_config(!commodities.empty(), "virtual queues need commodities");
  max_lifetime_ = 1;
  for (const auto& c : commodities) {
    validate_commodity(c, num_nodes_);
    max_lifetime_ = std::max(max_lifetime_, c.max_lifetime);
    destinations_.push_back(c.destination);
    gammas_.push_back(c.gamma);
  }
  u_dest_.assign(num_commodities_, 0.0);
  u_.assign(static_cast<std::size_t>(num_commodities_) * num_nodes_ *
                max_lifetime_,
            0.0);
}

double VirtualQueueBank::norm1() const {
  double s = 0.0;
  for (double v : u_dest_) s += v;
  for (double v : u_) s += v;
  return s;
}

void compute_weights(const VirtualQueueBank& u, const NetworkGraph& g,
                     const ControllerConfig& cfg, WeightBuffer& weights) {
  const int V = g.num_nodes();
  const int E = g.num_edges();
  const int L = u.max_lifetime();
  const int K = u.num_commodities();
  weights.assign(static_cast<std::size_t>(K) * E * L, 0.0);

  // Prefix sums over lifetimes: prefix(k, i, l) = sum_{m=1..l} U_k(i, m).
  static thread_local std::vector<double> prefix;
  prefix.assign(static_cast<std::size_t>(K) * V * L, 0.0);
  for (int k = 0; k < K; ++k) {
    for (NodeId i = 0; i < V; ++i) {
      double acc = 0.0;
      for (int l = 1; l <= L; ++l) {
        acc += u.at(k, i, l);
        prefix[(static_cast<std::size_t>(k) * V + i) * L + (l - 1)] = acc;
      }
    }
  }
  const double neg_inf = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < K; ++k) {
    const NodeId dest = u.destination(k);
    for (int e = 0; e < E; ++e) {
      const Edge& ed = g.edge(e);
      double* w = &weights[(static_cast<std::size_t>(k) * E + e) * L];
      if (ed.src == dest) {
        for (int l = 0; l < L; ++l) w[l] = neg_inf;
        continue;
      }
      const double* pi =
          &prefix[(static_cast<std::size_t>(k) * V + ed.src) * L];
      const double base = -cfg.V * ed.cost;
      if (ed.dst == dest) {
        const double ud = u.dest(k);
        for (int l = 0; l < L; ++l) w[l] = base - pi[l] + ud;
      } else {
        const double* pj =
            &prefix[(static_cast<std::size_t>(k) * V + ed.dst) * L];
        w[0] = base - pi[0];  // a lifetime-1 hand-off relieves the receiver
                              // of nothing: it expires on arrival
        for (int l = 1; l < L; ++l) w[l] = base - pi[l] + pj[l - 1];
      }
    }
  }
}

FlowDecision max_weight_allocate(const WeightBuffer& weights,
                                 const NetworkGraph& g,
                                 const std::vector<CapacityGroup>& groups,
                                 int max_lifetime, int num_commodities) {
  const int E = g.num_edges();
  const int L = max_lifetime;
  FlowDecision nu(E, L, num_commodities);
  for (const auto& grp : groups) {
    int best_edge = -1, best_l = 0, best_k = 0, best_pos = 0;
    double best_w = 0.0;
    for (int pos = 0; pos < static_cast<int>(grp.edges.size()); ++pos) {
      const int e = grp.edges[pos];
      for (int k = 0; k < num_commodities; ++k) {
        const double* w = &weights[(static_cast<std::size_t>(k) * E + e) * L];
        for (int l = 1; l <= L; ++l) {
          const double cand = w[l - 1];
          if (cand <= 0.0) continue;  // only strictly profitable transfers
          bool take = cand > best_w;
          if (!take && cand == best_w && best_edge >= 0) {
            // Exact tie: prefer the smallest lifetime, then the lowest
            // commodity id, then the group's edge order.
            take = std::tuple(l, k, pos) <
                   std::tuple(best_l, best_k, best_pos);
          }
          if (take) {
            best_w = cand;
            best_edge = e;
            best_l = l;
            best_k = k;
            best_pos = pos;
          }
        }
      }
    }
    if (best_edge >= 0) nu.add(best_edge, best_l, best_k, grp.capacity);
  }
  return nu;
}

void update_virtual_queues(VirtualQueueBank& u, const FlowDecision& nu,
                           const ArrivalSample& arrivals,
                           const NetworkGraph& g) {
  const int V = u.num_nodes();
  const int L = u.max_lifetime();
  const int K = u.num_commodities();

  // Sparse per-(commodity, node) lifetime histograms of this slot's flows
  // and arrivals; only touched nodes need a queue update, because an
  // untouched non-negative queue is a fixed point of the max{0, .} rule.
  static thread_local std::vector<double> out_hist, in_hist, arr_hist;
  static thread_local std::vector<int> touched;
  static thread_local std::vector<char> touched_flag;
  const std::size_t cells = static_cast<std::size_t>(K) * V;
  out_hist.assign(cells * L, 0.0);
  in_hist.assign(cells * (L + 1), 0.0);
  arr_hist.assign(cells * L, 0.0);
  touched.clear();
  touched_flag.assign(cells, 0);
  std::vector<double> dest_inflow(K, 0.0);

  auto touch = [&](int k, NodeId i) {
    std::size_t cell = static_cast<std::size_t>(k) * V + i;
    if (!touched_flag[cell]) {
      touched_flag[cell] = 1;
      touched.push_back(static_cast<int>(cell));
    }
    return cell;
  };

  nu.for_each([&](int e, int l, int k, double amt) {
    const Edge& ed = g.edge(e);
    out_hist[touch(k, ed.src) * L + (l - 1)] += amt;
    if (ed.dst == u.destination(k)) {
      dest_inflow[k] += amt;
    } else {
      in_hist[touch(k, ed.dst) * (L + 1) + l] += amt;
    }
  });
  for (const auto& a : arrivals.entries()) {
    arr_hist[touch(a.commodity, a.node) * L + (a.lifetime - 1)] += a.amount;
  }

  for (int k = 0; k < K; ++k) {
    const double a_total = arrivals.total(k);
    const double next = u.dest(k) + u.gamma(k) * a_total - dest_inflow[k];
    u.set_dest(k, std::max(0.0, next));
  }

  // U_k(i, l) <- max{0, U + out(>= l) - in(>= l+1) - a(>= l)} via suffix
  // sums per touched cell.
  for (int cell : touched) {
    const int k = cell / V;
    const NodeId i = cell % V;
    if (i == u.destination(k)) continue;  // destination keeps no such queues
    double suf_out = 0.0, suf_in = 0.0, suf_arr = 0.0;
    for (int l = L; l >= 1; --l) {
      suf_out += out_hist[static_cast<std::size_t>(cell) * L + (l - 1)];
      if (l < L) {
        suf_in += in_hist[static_cast<std::size_t>(cell) * (L + 1) + (l + 1)];
      }
      suf_arr += arr_hist[static_cast<std::size_t>(cell) * L + (l - 1)];
      const double next = u.at(k, i, l) + suf_out - suf_in - suf_arr;
      u.set(k, i, l, std::max(0.0, next));
    }
  }
}

LdpController::LdpController(const NetworkGraph& g,
                             std::vector<CapacityGroup> groups,
                             const std::vector<Commodity>& commodities,
                             ControllerConfig cfg)
    : g_(g),
      groups_(std::move(groups)),
      commodities_(commodities),
      cfg_(cfg),
      u_(g, commodities),
      nu_(g.num_edges(), u_.max_lifetime(), u_.num_commodities()) {
  require_config(cfg_.V >= 0.0, "cost emphasis V must be non-negative");
}

const FlowDecision& LdpController::step(const ArrivalSample& arrivals) {
  compute_weights(u_, g_, cfg_, weights_);
  nu_ = max_weight_allocate(weights_, g_, groups_, u_.max_lifetime(),
                            u_.num_commodities());
  update_virtual_queues(u_, nu_, arrivals, g_);
  ++slot_;
  return nu_;
}

}  // namespace dcnet
