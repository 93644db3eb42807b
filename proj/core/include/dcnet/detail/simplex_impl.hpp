#pragma once

// Generic dense two-phase simplex over an ordered field.  Instantiated with
// double for production solves and with an exact rational type for tiny
// certification instances (see lp_exact.hpp).

#include <cstdlib>
#include <string>
#include <vector>

#include "dcnet/lp.hpp"

namespace dcnet::detail {

template <class Num>
Num num_abs(const Num& v) {
  return v < Num(0) ? Num(-v) : v;
}

template <class Num>
struct SimplexRow {
  std::vector<std::pair<int, Num>> coeffs;
  Rel rel = Rel::Le;
  Num rhs = Num(0);
};

template <class Num>
struct SimplexOutcome {
  LpStatus status = LpStatus::IterationLimit;
  Num objective = Num(0);
  std::vector<Num> x;
  long long pivots = 0;
};

template <class Num>
class SimplexTableau {
 public:
  SimplexTableau(int num_vars, const std::vector<Num>& cost,
                 const std::vector<SimplexRow<Num>>& rows, Num eps,
                 long long max_pivots)
      : n_(num_vars), m_(static_cast<int>(rows.size())), eps_(eps) {
    // Column layout: structural | one slack or surplus per inequality |
    // one artificial per >=/= row (and per <= row with a flipped sign).
    cols_ = n_;
    std::vector<int> slack_col(m_, -1);
    std::vector<int> art_col(m_, -1);
    std::vector<bool> flipped(m_, false);
    for (int r = 0; r < m_; ++r) {
      Rel rel = rows[r].rel;
      bool flip = rows[r].rhs < Num(0);
      flipped[r] = flip;
      if (flip) rel = (rel == Rel::Le) ? Rel::Ge : (rel == Rel::Ge ? Rel::Le : Rel::Eq);
      if (rel != Rel::Eq) slack_col[r] = cols_++;
      if (rel != Rel::Le) art_col[r] = cols_++;
      eff_rel_.push_back(rel);
    }
    is_artificial_.assign(cols_, false);
    a_.assign(static_cast<std::size_t>(m_) * (cols_ + 1), Num(0));
    basis_.assign(m_, -1);
    active_.assign(m_, true);
    cost_ = cost;
    cost_.resize(cols_, Num(0));

    for (int r = 0; r < m_; ++r) {
      Num sign = flipped[r] ? Num(-1) : Num(1);
      for (const auto& [j, v] : rows[r].coeffs) at(r, j) += sign * v;
      rhs(r) = sign * rows[r].rhs;
      if (slack_col[r] >= 0) {
        at(r, slack_col[r]) = eff_rel_[r] == Rel::Le ? Num(1) : Num(-1);
      }
      if (art_col[r] >= 0) {
        at(r, art_col[r]) = Num(1);
        is_artificial_[art_col[r]] = true;
        basis_[r] = art_col[r];
      } else {
        basis_[r] = slack_col[r];  // a <= row with rhs >= 0: slack is basic
      }
    }
    max_pivots_ = max_pivots > 0
                      ? max_pivots
                      : 2000LL + 40LL * (static_cast<long long>(m_) + cols_);
  }

  SimplexOutcome<Num> solve() {
    SimplexOutcome<Num> out;

    bool any_artificial = false;
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] >= 0 && is_artificial_[basis_[r]]) any_artificial = true;
    }
    if (any_artificial) {
      // Phase 1: drive the artificial variables to zero.
      std::vector<Num> phase1(cols_, Num(0));
      for (int j = 0; j < cols_; ++j) {
        if (is_artificial_[j]) phase1[j] = Num(1);
      }
      load_objective(phase1);
      LpStatus st = iterate(/*bar_artificials=*/false, out.pivots);
      if (st != LpStatus::Optimal) {
        out.status = st == LpStatus::Unbounded ? LpStatus::Infeasible : st;
        return out;
      }
      Num infeas = Num(0);
      for (int r = 0; r < m_; ++r) {
        if (active_[r] && is_artificial_[basis_[r]]) infeas += rhs(r);
      }
      if (infeas > feas_tol()) {
        out.status = LpStatus::Infeasible;
        out.pivots = pivots_;
        return out;
      }
      expel_artificials();
    }

    load_objective(cost_);
    LpStatus st = iterate(/*bar_artificials=*/true, out.pivots);
    out.status = st;
    out.pivots = pivots_;
    if (st != LpStatus::Optimal) return out;

    out.x.assign(n_, Num(0));
    for (int r = 0; r < m_; ++r) {
      if (active_[r] && basis_[r] < n_) out.x[basis_[r]] = rhs(r);
    }
    out.objective = Num(0);
    for (int j = 0; j < n_; ++j) out.objective += cost_[j] * out.x[j];
    return out;
  }

 private:
  Num& at(int r, int j) { return a_[static_cast<std::size_t>(r) * (cols_ + 1) + j]; }
  const Num& at(int r, int j) const {
    return a_[static_cast<std::size_t>(r) * (cols_ + 1) + j];
  }
  Num& rhs(int r) { return a_[static_cast<std::size_t>(r) * (cols_ + 1) + cols_]; }
  const Num& rhs(int r) const {
    return a_[static_cast<std::size_t>(r) * (cols_ + 1) + cols_];
  }
  Num feas_tol() const { return eps_ * Num(10); }

  // Replaces the objective row with reduced costs for `c` under the current
  // basis.
  void load_objective(const std::vector<Num>& c) {
    z_.assign(cols_ + 1, Num(0));
    for (int j = 0; j < cols_; ++j) z_[j] = c[j];
    for (int r = 0; r < m_; ++r) {
      if (!active_[r]) continue;
      const Num& cb = c[basis_[r]];
      if (cb == Num(0)) continue;
      const Num* row = &a_[static_cast<std::size_t>(r) * (cols_ + 1)];
      for (int j = 0; j <= cols_; ++j) {
        if (!(row[j] == Num(0))) z_[j] -= cb * row[j];
      }
    }
  }

  void pivot(int pr, int pc) {
    Num inv = Num(1) / at(pr, pc);
    Num* prow = &a_[static_cast<std::size_t>(pr) * (cols_ + 1)];
    for (int j = 0; j <= cols_; ++j) {
      if (!(prow[j] == Num(0))) prow[j] *= inv;
    }
    prow[pc] = Num(1);
    for (int r = 0; r < m_; ++r) {
      if (r == pr || !active_[r]) continue;
      Num f = at(r, pc);
      if (f == Num(0)) continue;
      Num* row = &a_[static_cast<std::size_t>(r) * (cols_ + 1)];
      for (int j = 0; j <= cols_; ++j) {
        if (!(prow[j] == Num(0))) row[j] -= f * prow[j];
      }
      row[pc] = Num(0);
    }
    {
      Num f = z_[pc];
      if (!(f == Num(0))) {
        for (int j = 0; j <= cols_; ++j) {
          if (!(prow[j] == Num(0))) z_[j] -= f * prow[j];
        }
        z_[pc] = Num(0);
      }
    }
    basis_[pr] = pc;
    ++pivots_;
  }

  // Dantzig pricing until stalls accumulate, then Bland's rule (which cannot
  // cycle).  Returns Optimal/Unbounded/IterationLimit.
  LpStatus iterate(bool bar_artificials, long long& pivot_count) {
    long long degenerate_streak = 0;
    bool bland = false;
    while (true) {
      if (pivots_ > max_pivots_) return LpStatus::IterationLimit;
      int enter = -1;
      if (!bland) {
        Num best = Num(0) - eps_;
        for (int j = 0; j < cols_; ++j) {
          if (bar_artificials && is_artificial_[j]) continue;
          if (z_[j] < best) {
            best = z_[j];
            enter = j;
          }
        }
      } else {
        for (int j = 0; j < cols_; ++j) {
          if (bar_artificials && is_artificial_[j]) continue;
          if (z_[j] < Num(0) - eps_) {
            enter = j;
            break;
          }
        }
      }
      if (enter < 0) return LpStatus::Optimal;

      int leave = -1;
      Num best_ratio = Num(0);
      for (int r = 0; r < m_; ++r) {
        if (!active_[r]) continue;
        const Num& arj = at(r, enter);
        if (!(arj > eps_)) continue;
        Num ratio = rhs(r) / arj;
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return LpStatus::Unbounded;

      if (best_ratio > eps_) {
        degenerate_streak = 0;
      } else if (++degenerate_streak > 4LL * (m_ + cols_)) {
        bland = true;  // anti-cycling guarantee
      }
      pivot(leave, enter);
      pivot_count = pivots_;
    }
  }

  // After phase 1, swap every residual basic artificial for a structural or
  // slack column; rows that admit none are redundant and get deactivated.
  void expel_artificials() {
    for (int r = 0; r < m_; ++r) {
      if (!active_[r] || !is_artificial_[basis_[r]]) continue;
      int pc = -1;
      for (int j = 0; j < cols_; ++j) {
        if (is_artificial_[j]) continue;
        if (num_abs(at(r, j)) > eps_) {
          pc = j;
          break;
        }
      }
      if (pc >= 0) {
        pivot(r, pc);
      } else {
        active_[r] = false;  // 0 = 0 row
      }
    }
  }

  int n_ = 0;
  int m_ = 0;
  int cols_ = 0;
  Num eps_;
  long long max_pivots_ = 0;
  long long pivots_ = 0;
  std::vector<Num> a_;      // m x (cols + 1), last column is rhs
  std::vector<Num> z_;      // reduced-cost row
  std::vector<Num> cost_;   // phase-2 costs padded to all columns
  std::vector<int> basis_;
  std::vector<bool> active_;
  std::vector<bool> is_artificial_;
  std::vector<Rel> eff_rel_;
};

template <class Num>
SimplexOutcome<Num> simplex_solve(int num_vars, const std::vector<Num>& cost,
                                  const std::vector<SimplexRow<Num>>& rows,
                                  Num eps, long long max_pivots = 0) {
  SimplexTableau<Num> t(num_vars, cost, rows, eps, max_pivots);
  return t.solve();
}

}  // namespace dcnet::detail
