#pragma once

#include <string>
#include <utility>
#include <vector>

namespace dcnet {

enum class Rel { Le, Ge, Eq };

struct LpRow {
  std::vector<std::pair<int, double>> coeffs;  // (variable, coefficient)
  Rel rel = Rel::Le;
  double rhs = 0.0;
  std::string name;
};

// min c.x  subject to  rows, x >= 0.
struct LpProblem {
  std::string name;
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<LpRow> rows;
  std::vector<std::string> var_names;  // optional; filled for exports

  int add_var(double cost, std::string name = {});
  void add_row(LpRow row);
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

std::string to_string(LpStatus s);

struct LpSolution {
  LpStatus status = LpStatus::IterationLimit;
  double objective = 0.0;
  std::vector<double> x;
  long long pivots = 0;
};

struct LpOptions {
  double eps = 1e-8;          // pivot / feasibility tolerance
  long long max_pivots = 0;   // 0 = automatic limit
};

// Dense two-phase simplex (Dantzig pricing with a Bland anti-cycling
// fallback).  Suited to the mid-size instances this toolkit builds;
// no external solver is involved.
LpSolution solve_lp(const LpProblem& p, const LpOptions& opts = {});

// Serializes the problem in the standard text LP interchange format so
// solutions can be cross-checked with external tools.
std::string to_lp_format(const LpProblem& p);

}  // namespace dcnet
