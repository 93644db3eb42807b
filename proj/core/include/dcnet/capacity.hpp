#pragma once

#include <optional>
#include <vector>

#include "dcnet/commodity.hpp"
#include "dcnet/flow_matcher.hpp"
#include "dcnet/graph.hpp"
#include "dcnet/layered.hpp"
#include "dcnet/lp.hpp"

namespace dcnet {

// Static flow program deciding which scaled arrival vectors the network can
// support in time, and at what minimum average cost.  Variables are average
// flows x(k, e, l) >= 0; edges out of a commodity's destination carry no
// variable at all.  Constraints:
//   reliability  (per commodity):  total flow into the destination
//                                  >= gamma * theta * ||lambda_k||_1
//   capacity     (per group):      sum of member-edge flow (all k, l) <= C
//   conservation (per k, i != d, l): outflow at lifetimes >= l
//                                  <= inflow at lifetimes >= l+1
//                                     + theta * arrivals at lifetimes >= l
struct CapacityLpBuild {
  LpProblem problem;
  // (k * E + e) * L + (l-1) -> LP column, or -1 where eliminated.
  std::vector<int> var_index;
  int num_edges = 0;
  int max_lifetime = 0;
  int num_commodities = 0;
  double theta = 1.0;
};

struct CapacityOptions {
  double eps = 1e-8;   // solver pivot/feasibility tolerance
  bool exact = false;  // rational arithmetic (small instances only)
};

CapacityLpBuild build_capacity_lp(const NetworkGraph& g,
                                  const std::vector<Commodity>& commodities,
                                  const std::vector<CapacityGroup>& groups,
                                  double theta = 1.0,
                                  bool with_cost_objective = true);

struct CapacityProbe {
  bool feasible = false;
  double objective = 0.0;  // minimum cost when feasible (cost objective)
  LpSolution solution;     // raw solver output (x in LP column space)
};

// Solves the program at scaling theta.  With `with_cost_objective` false
// the solve is a pure feasibility probe (zero objective, fewer pivots).
CapacityProbe probe_capacity(const NetworkGraph& g,
                             const std::vector<Commodity>& commodities,
                             const std::vector<CapacityGroup>& groups,
                             double theta, const CapacityOptions& opts = {},
                             bool with_cost_objective = true);

// Minimum average cost at scaling theta, or nullopt when infeasible.
std::optional<double> min_cost(const NetworkGraph& g,
                               const std::vector<Commodity>& commodities,
                               const std::vector<CapacityGroup>& groups,
                               double theta = 1.0,
                               const CapacityOptions& opts = {});

struct BoundaryResult {
  double theta_star = 0.0;  // largest scaling found feasible
  double upper = 0.0;       // first scaling found infeasible
  int probes = 0;
  bool unbounded = false;  // feasible at every probed scaling (gamma == 0)
};

// Largest theta with (theta * lambda, gamma) supportable, by bisection to
// within `tol`.  Feasibility is monotone decreasing in theta.
BoundaryResult region_boundary(const NetworkGraph& g,
                               const std::vector<Commodity>& commodities,
                               const std::vector<CapacityGroup>& groups,
                               double tol = 1e-3,
                               const CapacityOptions& opts = {});

// Forwarding probabilities induced by a solved flow plan:
//   alpha_i^(l)(j) = x_ij^(l) / (inflow(>= l+1) + theta*arrivals(>= l)
//                                - outflow(>= l+1))
// Rows with no outgoing flow (or a degenerate denominator) hold everything.
RoutingDistribution extract_randomized_policy(
    const CapacityLpBuild& build, const std::vector<double>& x,
    const NetworkGraph& g, const std::vector<Commodity>& commodities);

}  // namespace dcnet
