#include "dcnet/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dcnet/lp_exact.hpp"

namespace dcnet {

namespace {

// Arrival rate of commodity k at node i with birth lifetime exactly l.
double arrival_rate_at(const Commodity& c, NodeId i, int l) {
  double s = 0.0;
  for (const auto& r : c.rates) {
    if (r.node == i && r.lifetime == l) s += r.rate;
  }
  return s;
}

}  // namespace

CapacityLpBuild build_capacity_lp(const NetworkGraph& g,
                                  const std::vector<Commodity>& commodities,
                                  const std::vector<CapacityGroup>& groups,
                                  double theta, bool with_cost_objective) {
  require_config(!commodities.empty(), "capacity program needs commodities");
  require_config(theta >= 0.0, "scaling must be non-negative");
  const int E = g.num_edges();
  const int K = static_cast<int>(commodities.size());
  int L = 1;
  for (const auto& c : commodities) {
    validate_commodity(c, g.num_nodes());
    L = std::max(L, c.max_lifetime);
  }

  CapacityLpBuild b;
  b.num_edges = E;
  b.max_lifetime = L;
  b.num_commodities = K;
  b.theta = theta;
  b.var_index.assign(static_cast<std::size_t>(K) * E * L, -1);
  b.problem.name = "capacity";

  // Variables, skipping edges out of each commodity's destination.
  for (int k = 0; k < K; ++k) {
    const NodeId dest = commodities[k].destination;
    for (int e = 0; e < E; ++e) {
      const Edge& ed = g.edge(e);
      if (ed.src == dest) continue;
      for (int l = 1; l <= L; ++l) {
        const double cost = with_cost_objective ? ed.cost : 0.0;
        const int col = b.problem.add_var(
            cost, "x_k" + std::to_string(k) + "_e" + std::to_string(e) +
                      "_l" + std::to_string(l));
        b.var_index[(static_cast<std::size_t>(k) * E + e) * L + (l - 1)] =
            col;
      }
    }
  }
  auto var = [&](int k, int e, int l) {
    return b.var_index[(static_cast<std::size_t>(k) * E + e) * L + (l - 1)];
  };

  // Reliability: flow into the destination (any lifetime) covers the
  // required fraction of the commodity's scaled arrival volume.
  for (int k = 0; k < K; ++k) {
    const Commodity& c = commodities[k];
    LpRow row;
    row.rel = Rel::Ge;
    row.rhs = c.gamma * theta * c.total_rate();
    row.name = "rel_k" + std::to_string(k);
    for (int e : g.in_edges(c.destination)) {
      for (int l = 1; l <= L; ++l) {
        if (var(k, e, l) >= 0) row.coeffs.push_back({var(k, e, l), 1.0});
      }
    }
    b.problem.add_row(std::move(row));
  }

  // Shared capacity per group, all commodities and lifetimes together.
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    LpRow row;
    row.rel = Rel::Le;
    row.rhs = groups[gi].capacity;
    row.name = "cap_g" + std::to_string(gi);
    for (int e : groups[gi].edges) {
      for (int k = 0; k < K; ++k) {
        for (int l = 1; l <= L; ++l) {
          if (var(k, e, l) >= 0) row.coeffs.push_back({var(k, e, l), 1.0});
        }
      }
    }
    b.problem.add_row(std::move(row));
  }

  // Conservation: at every non-destination node and lifetime, what leaves
  // at lifetimes >= l fits within what entered at lifetimes >= l+1 plus
  // scaled exogenous arrivals with birth lifetime >= l.
  for (int k = 0; k < K; ++k) {
    const Commodity& c = commodities[k];
    for (NodeId i = 0; i < g.num_nodes(); ++i) {
      if (i == c.destination) continue;
      for (int l = 1; l <= L; ++l) {
        LpRow row;
        row.rel = Rel::Le;
        double arr = 0.0;
        for (int m = l; m <= L; ++m) arr += arrival_rate_at(c, i, m);
        row.rhs = theta * arr;
        row.name = "cons_k" + std::to_string(k) + "_n" + std::to_string(i) +
                   "_l" + std::to_string(l);
        for (int e : g.out_edges(i)) {
          for (int m = l; m <= L; ++m) {
            if (var(k, e, m) >= 0) row.coeffs.push_back({var(k, e, m), 1.0});
          }
        }
        for (int e : g.in_edges(i)) {
          for (int m = l + 1; m <= L; ++m) {
            if (var(k, e, m) >= 0) row.coeffs.push_back({var(k, e, m), -1.0});
          }
        }
        if (row.coeffs.empty() && row.rhs >= 0.0) continue;  // vacuous
        b.problem.add_row(std::move(row));
      }
    }
  }
  return b;
}

CapacityProbe probe_capacity(const NetworkGraph& g,
                             const std::vector<Commodity>& commodities,
                             const std::vector<CapacityGroup>& groups,
                             double theta, const CapacityOptions& opts,
                             bool with_cost_objective) {
  CapacityLpBuild b =
      build_capacity_lp(g, commodities, groups, theta, with_cost_objective);
  CapacityProbe probe;
  if (opts.exact) {
    ExactLpSolution exact = solve_lp_exact(b.problem);
    probe.solution.status = exact.status;
    probe.solution.pivots = exact.pivots;
    probe.solution.objective = static_cast<double>(exact.objective);
    probe.solution.x.reserve(exact.x.size());
    for (const auto& v : exact.x) {
      probe.solution.x.push_back(static_cast<double>(v));
    }
  } else {
    LpOptions lp_opts;
    lp_opts.eps = opts.eps;
    probe.solution = solve_lp(b.problem, lp_opts);
  }
  require_invariant(probe.solution.status != LpStatus::Unbounded,
                    "capacity program cannot be unbounded");
  require_invariant(probe.solution.status != LpStatus::IterationLimit,
                    "capacity solve exceeded its pivot budget");
  probe.feasible = probe.solution.status == LpStatus::Optimal;
  probe.objective = probe.feasible ? probe.solution.objective : 0.0;
  return probe;
}

std::optional<double> min_cost(const NetworkGraph& g,
                               const std::vector<Commodity>& commodities,
                               const std::vector<CapacityGroup>& groups,
                               double theta, const CapacityOptions& opts) {
  CapacityProbe probe =
      probe_capacity(g, commodities, groups, theta, opts, true);
  if (!probe.feasible) return std::nullopt;
  return probe.objective;
}

BoundaryResult region_boundary(const NetworkGraph& g,
                               const std::vector<Commodity>& commodities,
                               const std::vector<CapacityGroup>& groups,
                               double tol, const CapacityOptions& opts) {
  require_config(tol > 0.0, "bisection tolerance must be positive");
  BoundaryResult result;
  auto feasible = [&](double theta) {
    ++result.probes;
    return probe_capacity(g, commodities, groups, theta, opts, false)
        .feasible;
  };

  // A delivery-volume cut brackets the boundary: every timely delivery
  // consumes at least one unit of some shared capacity per slot, so total
  // required volume can never exceed total provisioned capacity.
  double required = 0.0;
  for (const auto& c : commodities) required += c.gamma * c.total_rate();
  if (required <= 0.0) {
    // Nothing is required to be delivered: every scaling is supportable.
    result.unbounded = true;
    result.theta_star = std::numeric_limits<double>::infinity();
    return result;
  }
  double total_capacity = 0.0;
  for (const auto& grp : groups) total_capacity += grp.capacity;
  double hi = total_capacity / required + 1.0;
  while (feasible(hi)) {  // safety net; the cut should already be infeasible
    hi *= 2.0;
    require_invariant(hi < 1e12, "region boundary bracket diverged");
  }
  double lo = 0.0;  // zero scaling is always supportable
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  result.theta_star = lo;
  result.upper = hi;
  return result;
}

RoutingDistribution extract_randomized_policy(
    const CapacityLpBuild& build, const std::vector<double>& x,
    const NetworkGraph& g, const std::vector<Commodity>& commodities) {
  const int V = g.num_nodes();
  const int E = build.num_edges;
  const int L = build.max_lifetime;
  const int K = build.num_commodities;
  require_invariant(static_cast<int>(commodities.size()) == K,
                    "commodity count mismatch");

  auto flow = [&](int k, int e, int l) -> double {
    const int col =
        build.var_index[(static_cast<std::size_t>(k) * E + e) * L + (l - 1)];
    return col < 0 ? 0.0 : std::max(0.0, x[col]);
  };

  RoutingDistribution dist;
  dist.num_edges = E;
  dist.num_nodes = V;
  dist.max_lifetime = L;
  dist.num_commodities = K;
  dist.alpha.assign(static_cast<std::size_t>(K) * E * L, 0.0);
  dist.hold.assign(static_cast<std::size_t>(K) * V * L, 1.0);

  for (int k = 0; k < K; ++k) {
    const Commodity& c = commodities[k];
    for (NodeId i = 0; i < V; ++i) {
      if (i == c.destination) continue;
      double in_ge = 0.0, out_ge = 0.0, arr_ge = 0.0;
      for (int l = L; l >= 1; --l) {
        arr_ge += build.theta * arrival_rate_at(c, i, l);
        const double denom = in_ge + arr_ge - out_ge;
        double out_here = 0.0;
        for (int e : g.out_edges(i)) out_here += flow(k, e, l);
        if (out_here > 0.0 && denom > 0.0) {
          double row_sum = 0.0;
          for (int e : g.out_edges(i)) {
            const double a = std::min(1.0, flow(k, e, l) / denom);
            dist.alpha[(static_cast<std::size_t>(k) * E + e) * L + (l - 1)] =
                a;
            row_sum += a;
          }
          if (row_sum > 1.0) {  // solver tolerance slack: renormalize
            for (int e : g.out_edges(i)) {
              dist.alpha[(static_cast<std::size_t>(k) * E + e) * L +
                         (l - 1)] /= row_sum;
            }
            row_sum = 1.0;
          }
          dist.hold[(static_cast<std::size_t>(k) * V + i) * L + (l - 1)] =
              1.0 - row_sum;
        }
        for (int e : g.in_edges(i)) in_ge += flow(k, e, l);
        out_ge += out_here;
      }
    }
  }
  return dist;
}

}  // namespace dcnet
