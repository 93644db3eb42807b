#pragma once

// Exact-arithmetic variant of the simplex solver for tiny certification
// instances.  Header-only on purpose: pulling boost::multiprecision into
// every translation unit would be wasteful, so only the few callers that
// need exact certificates include this.

#include <boost/multiprecision/cpp_int.hpp>

#include "dcnet/detail/simplex_impl.hpp"
#include "dcnet/lp.hpp"

namespace dcnet {

using ExactRational = boost::multiprecision::cpp_rational;

struct ExactLpSolution {
  LpStatus status = LpStatus::IterationLimit;
  ExactRational objective;
  std::vector<ExactRational> x;
  long long pivots = 0;
};

// Solves with exact rational pivoting.  Doubles convert losslessly (every
// finite double is a dyadic rational), so the certified optimum is the true
// optimum of the stated problem.
inline ExactLpSolution solve_lp_exact(const LpProblem& p) {
  std::vector<ExactRational> cost;
  cost.reserve(p.num_vars);
  for (double c : p.objective) cost.emplace_back(c);
  std::vector<detail::SimplexRow<ExactRational>> rows;
  rows.reserve(p.rows.size());
  for (const auto& r : p.rows) {
    detail::SimplexRow<ExactRational> row;
    for (const auto& [j, v] : r.coeffs) row.coeffs.emplace_back(j, ExactRational(v));
    row.rel = r.rel;
    row.rhs = ExactRational(r.rhs);
    rows.push_back(std::move(row));
  }
  auto out = detail::simplex_solve<ExactRational>(p.num_vars, cost, rows,
                                                  ExactRational(0));
  ExactLpSolution sol;
  sol.status = out.status;
  sol.objective = out.objective;
  sol.x = std::move(out.x);
  sol.pivots = out.pivots;
  return sol;
}

}  // namespace dcnet
