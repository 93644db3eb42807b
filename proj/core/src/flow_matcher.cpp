#include "dcnet/flow_matcher.hpp"

#include <algorithm>
#include <cmath>

namespace dcnet {

EmpiricalFlowStats::EmpiricalFlowStats(int num_edges, int num_nodes,
                                       int max_lifetime, int num_commodities)
    : num_edges_(num_edges),
      num_nodes_(num_nodes),
      max_lifetime_(max_lifetime),
      num_commodities_(num_commodities),
      flow_sum_(static_cast<std::size_t>(num_commodities) * num_edges *
                    max_lifetime,
                0.0),
      arrival_sum_(static_cast<std::size_t>(num_commodities) * num_nodes *
                       max_lifetime,
                   0.0) {}

void EmpiricalFlowStats::update(const FlowDecision& nu,
                                const ArrivalSample& arrivals) {
  nu.for_each([&](int e, int l, int k, double amt) {
    flow_sum_[(static_cast<std::size_t>(k) * num_edges_ + e) * max_lifetime_ +
              (l - 1)] += amt;
  });
  for (const auto& a : arrivals.entries()) {
    arrival_sum_[(static_cast<std::size_t>(a.commodity) * num_nodes_ + a.node) *
                     max_lifetime_ +
                 (a.lifetime - 1)] += a.amount;
  }
  ++t_;
}

std::optional<RoutingDistribution> build_distribution(
    const EmpiricalFlowStats& stats, const NetworkGraph& g,
    const std::vector<Commodity>& commodities,
    const double* row_excess_bound) {
  require_invariant(stats.slots() >= 1, "distribution needs observed slots");
  const int V = stats.num_nodes();
  const int E = stats.num_edges();
  const int L = stats.max_lifetime();
  const int K = stats.num_commodities();
  // Averages equal sums / t and t > 0 cancels in every ratio below, so the
  // distribution is computed directly from raw sums.
  constexpr double kRelTol = 1e-9;
  constexpr double kAbsTol = 1e-9;

  RoutingDistribution dist;
  dist.num_edges = E;
  dist.num_nodes = V;
  dist.max_lifetime = L;
  dist.num_commodities = K;
  dist.alpha.assign(static_cast<std::size_t>(K) * E * L, 0.0);
  dist.hold.assign(static_cast<std::size_t>(K) * V * L, 1.0);

  for (int k = 0; k < K; ++k) {
    const NodeId dest = commodities[k].destination;
    for (NodeId i = 0; i < V; ++i) {
      if (i == dest) continue;  // destinations never forward
      // Suffix sums over lifetimes of this node's in/out flow and arrivals.
      double in_ge = 0.0;   // inflow at lifetimes >= l+1 (loop-carried)
      double out_ge = 0.0;  // outflow at lifetimes >= l+1
      double arr_ge = 0.0;  // arrivals at lifetimes >= l
      for (int l = L; l >= 1; --l) {
        arr_ge += stats.arrival_sum(k, i, l);
        const double denom = in_ge + arr_ge - out_ge;
        double out_here = 0.0;
        for (int e : g.out_edges(i)) out_here += stats.flow_sum(k, e, l);
        if (out_here > 0.0) {
          const double slack =
              row_excess_bound == nullptr
                  ? 0.0
                  : row_excess_bound[(static_cast<std::size_t>(k) * V + i) *
                                         L +
                                     (l - 1)];
          // Outflow running ahead of availability by more than the
          // admissible excess means the sums do not satisfy conservation;
          // keep the previous distribution.
          if (out_here > (denom + slack) * (1.0 + kRelTol) + kAbsTol) {
            return std::nullopt;
          }
          // A denominator at or below zero (within the excess bound) means
          // the availability is statistically indistinguishable from zero:
          // the row keeps its all-hold default.
          if (denom > kAbsTol) {
            double row_sum = 0.0;
            for (int e : g.out_edges(i)) {
              const double a = stats.flow_sum(k, e, l) / denom;
              dist.alpha[(static_cast<std::size_t>(k) * E + e) * L +
                         (l - 1)] = a;
              row_sum += a;
            }
            if (row_sum > 1.0) {  // excess within the bound: renormalize
              for (int e : g.out_edges(i)) {
                dist.alpha[(static_cast<std::size_t>(k) * E + e) * L +
                           (l - 1)] /= row_sum;
              }
              row_sum = 1.0;
            }
            dist.hold[(static_cast<std::size_t>(k) * V + i) * L + (l - 1)] =
                1.0 - row_sum;
          }
        }
        // Roll the suffixes down to lifetime l-1.
        for (int e : g.in_edges(i)) in_ge += stats.flow_sum(k, e, l);
        out_ge += out_here;
      }
    }
  }
  return dist;
}

namespace {

void apply_peak_cap(FlowDecision& mu, const RealizeOptions& opts) {
  if (opts.peak_cap_factor <= 0.0 || opts.groups == nullptr) return;
  // Proportionally rescale each capacity group whose slot total exceeds the
  // cap; scaling down preserves availability.
  const int L = mu.max_lifetime();
  const int K = mu.num_commodities();
  for (const auto& grp : *opts.groups) {
    double total = 0.0;
    for (int e : grp.edges) {
      for (int k = 0; k < K; ++k) {
        for (int l = 1; l <= L; ++l) total += mu.at(e, l, k);
      }
    }
    const double cap = opts.peak_cap_factor * grp.capacity;
    if (total <= cap || total <= 0.0) continue;
    const double scale = cap / total;
    FlowDecision scaled(mu.num_edges(), L, K);
    mu.for_each([&](int e, int l, int k, double amt) {
      const bool member =
          std::find(grp.edges.begin(), grp.edges.end(), e) != grp.edges.end();
      scaled.add(e, l, k, member ? amt * scale : amt);
    });
    mu = std::move(scaled);
  }
}

}  // namespace

FlowDecision realize_flows(const RoutingDistribution& dist,
                           const LifetimeQueueBank& bank,
                           const NetworkGraph& g, Rng& rng,
                           const RealizeOptions& opts) {
  const int V = bank.num_nodes();
  const int L = bank.max_lifetime();
  const int K = bank.num_commodities();
  FlowDecision mu(g.num_edges(), L, K);
  for (int k = 0; k < K; ++k) {
    for (NodeId i = 0; i < V; ++i) {
      const auto& out = g.out_edges(i);
      if (out.empty()) continue;
      for (int l = 1; l <= L; ++l) {
        const double q = bank.backlog(k, i, l);
        if (q <= 0.0) continue;
        if (!opts.sampled) {
          for (int e : out) {
            const double a = dist.edge_prob(k, e, l);
            if (a > 0.0) mu.add(e, l, k, q * a);
          }
        } else {
          // Whole quanta pick a destination (or hold) independently; the
          // sub-quantum remainder is split fluidly so nothing is stranded.
          const double quantum = std::max(opts.quantum, 1e-12);
          long long n = static_cast<long long>(q / quantum + 1e-12);
          const double remainder = q - static_cast<double>(n) * quantum;
          for (long long s = 0; s < n; ++s) {
            double u = rng.uniform01();
            for (int e : out) {
              const double a = dist.edge_prob(k, e, l);
              if (u < a) {
                mu.add(e, l, k, quantum);
                break;
              }
              u -= a;
            }
            // Falling through every edge means the quantum holds.
          }
          if (remainder > 0.0) {
            for (int e : out) {
              const double a = dist.edge_prob(k, e, l);
              if (a > 0.0) mu.add(e, l, k, remainder * a);
            }
          }
        }
      }
    }
  }
  apply_peak_cap(mu, opts);
  return mu;
}

double flow_matching_gap(const std::vector<double>& actual_avg,
                         const std::vector<double>& reference_avg) {
  require_invariant(actual_avg.size() == reference_avg.size(),
                    "flow average vectors must align");
  double diff = 0.0, ref = 0.0;
  for (std::size_t i = 0; i < actual_avg.size(); ++i) {
    diff += std::abs(actual_avg[i] - reference_avg[i]);
    ref += std::abs(reference_avg[i]);
  }
  return diff / std::max(ref, 1e-12);
}

FlowMatcher::FlowMatcher(const NetworkGraph& g,
                         const std::vector<Commodity>& commodities,
                         RealizeOptions opts)
    : g_(g),
      commodities_(commodities),
      opts_(opts),
      stats_(g.num_edges(), g.num_nodes(),
             [&] {
               int L = 1;
               for (const auto& c : commodities) {
                 L = std::max(L, c.max_lifetime);
               }
               return L;
             }(),
             static_cast<int>(commodities.size())),
      actual_sum_(static_cast<std::size_t>(g.num_edges()) *
                      stats_.max_lifetime() * commodities.size(),
                  0.0) {}

void FlowMatcher::observe(const FlowDecision& nu,
                          const ArrivalSample& arrivals,
                          const double* row_excess_bound) {
  stats_.update(nu, arrivals);
  auto built =
      build_distribution(stats_, g_, commodities_, row_excess_bound);
  if (built) {
    dist_ = std::move(*built);
    has_dist_ = true;
  } else {
    ++skips_;
  }
}

FlowDecision FlowMatcher::realize(const LifetimeQueueBank& bank, Rng& rng) {
  FlowDecision mu(g_.num_edges(), stats_.max_lifetime(),
                  stats_.num_commodities());
  if (has_dist_) {
    mu = realize_flows(dist_, bank, g_, rng, opts_);
  }
  mu.for_each([&](int e, int l, int k, double amt) {
    actual_sum_[(static_cast<std::size_t>(k) * g_.num_edges() + e) *
                    stats_.max_lifetime() +
                (l - 1)] += amt;
  });
  ++realized_slots_;
  return mu;
}

double FlowMatcher::gap() const {
  if (realized_slots_ == 0 || stats_.slots() == 0) return 0.0;
  std::vector<double> actual_avg(actual_sum_.size());
  std::vector<double> ref_avg(actual_sum_.size());
  const double ta = static_cast<double>(realized_slots_);
  const double tr = static_cast<double>(stats_.slots());
  const auto& ref_sum = stats_.flow_sums();
  for (std::size_t i = 0; i < actual_sum_.size(); ++i) {
    actual_avg[i] = actual_sum_[i] / ta;
    ref_avg[i] = ref_sum[i] / tr;
  }
  return flow_matching_gap(actual_avg, ref_avg);
}

}  // namespace dcnet
