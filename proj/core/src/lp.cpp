#include "dcnet/lp.hpp"

#include <cmath>
#include <sstream>

#include "dcnet/detail/simplex_impl.hpp"
#include "dcnet/errors.hpp"

namespace dcnet {

int LpProblem::add_var(double cost, std::string name) {
  objective.push_back(cost);
  var_names.push_back(name.empty() ? "x" + std::to_string(num_vars)
                                   : std::move(name));
  return num_vars++;
}

void LpProblem::add_row(LpRow row) { rows.push_back(std::move(row)); }

std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration-limit";
  }
  return "?";
}

namespace {

void validate_problem(const LpProblem& p) {
  require_config(p.num_vars >= 0, "negative variable count");
  require_config(static_cast<int>(p.objective.size()) == p.num_vars,
                 "objective length does not match variable count");
  for (const auto& row : p.rows) {
    for (const auto& [j, v] : row.coeffs) {
      require_config(j >= 0 && j < p.num_vars,
                     "row references unknown variable");
      require_config(std::isfinite(v), "non-finite row coefficient");
    }
    require_config(std::isfinite(row.rhs), "non-finite right-hand side");
  }
}

}  // namespace

LpSolution solve_lp(const LpProblem& p, const LpOptions& opts) {
  validate_problem(p);
  std::vector<detail::SimplexRow<double>> rows;
  rows.reserve(p.rows.size());
  for (const auto& r : p.rows) rows.push_back({r.coeffs, r.rel, r.rhs});
  auto out = detail::simplex_solve<double>(p.num_vars, p.objective, rows,
                                           opts.eps, opts.max_pivots);
  LpSolution sol;
  sol.status = out.status;
  sol.objective = out.objective;
  sol.x = std::move(out.x);
  sol.pivots = out.pivots;
  return sol;
}

namespace {

std::string var_name(const LpProblem& p, int j) {
  if (j < static_cast<int>(p.var_names.size()) && !p.var_names[j].empty()) {
    return p.var_names[j];
  }
  return "x" + std::to_string(j);
}

void write_terms(std::ostringstream& os,
                 const std::vector<std::pair<int, double>>& terms,
                 const LpProblem& p) {
  bool first = true;
  for (const auto& [j, v] : terms) {
    if (v == 0.0) continue;
    if (first) {
      if (v < 0.0) os << "- ";
      first = false;
    } else {
      os << (v < 0.0 ? " - " : " + ");
    }
    double mag = std::abs(v);
    if (mag != 1.0) os << mag << " ";
    os << var_name(p, j);
  }
  if (first) os << "0 " << var_name(p, 0);
}

}  // namespace

std::string to_lp_format(const LpProblem& p) {
  std::ostringstream os;
  os.precision(17);
  os << "\\ " << (p.name.empty() ? "problem" : p.name) << "\n";
  os << "Minimize\n obj: ";
  std::vector<std::pair<int, double>> obj;
  for (int j = 0; j < p.num_vars; ++j) {
    if (p.objective[j] != 0.0) obj.emplace_back(j, p.objective[j]);
  }
  write_terms(os, obj, p);
  os << "\nSubject To\n";
  int anon = 0;
  for (const auto& row : p.rows) {
    std::string rn = row.name.empty() ? "r" + std::to_string(anon) : row.name;
    ++anon;
    os << " " << rn << ": ";
    write_terms(os, row.coeffs, p);
    os << (row.rel == Rel::Le ? " <= " : row.rel == Rel::Ge ? " >= " : " = ");
    os << row.rhs << "\n";
  }
  // Default bounds (x >= 0) match the format's convention.
  os << "End\n";
  return os.str();
}

}  // namespace dcnet
