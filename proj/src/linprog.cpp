#include "subint/linprog.hpp"

#include <cassert>

#include "subint/errors.hpp"

namespace subint {

int LinearProgram::add_var(const Rational& cost, bool is_free) {
  if (static_cast<int>(free_var.size()) != num_vars)
    free_var.assign(num_vars, false);
  objective.push_back(cost);
  free_var.push_back(is_free);
  for (auto& row : rows) row.push_back(0);
  return num_vars++;
}

void LinearProgram::add_row(QVec coeffs, RowKind kind, Rational b) {
  assert(static_cast<int>(coeffs.size()) == num_vars);
  rows.push_back(std::move(coeffs));
  kinds.push_back(kind);
  rhs.push_back(std::move(b));
}

namespace {

// Dense tableau.  Column layout: structural vars (free ones split into
// plus/minus parts), then slacks, then artificials; last column is rhs.
class Tableau {
 public:
  Tableau(int rows, int cols) : ncols_(cols), data_(rows, QVec(cols, 0)) {}

  QVec& operator[](int r) { return data_[r]; }
  int rows() const { return static_cast<int>(data_.size()); }
  int cols() const { return ncols_; }

  void pivot(int pr, int pc) {
    QVec& prow = data_[pr];
    const Rational piv = prow[pc];
    for (auto& v : prow) v /= piv;
    for (int r = 0; r < rows(); ++r) {
      if (r == pr) continue;
      QVec& row = data_[r];
      if (row[pc] == 0) continue;
      const Rational factor = row[pc];
      for (int c = 0; c < ncols_; ++c) row[c] -= factor * prow[c];
    }
  }

 private:
  int ncols_;
  std::vector<QVec> data_;
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const int m = static_cast<int>(lp.rows.size());

  // Map structural variables to tableau columns.
  struct ColMap {
    int plus = -1;
    int minus = -1;  // only for free variables
  };
  std::vector<ColMap> vmap(lp.num_vars);
  int ncols = 0;
  for (int j = 0; j < lp.num_vars; ++j) {
    vmap[j].plus = ncols++;
    const bool is_free = !lp.free_var.empty() && lp.free_var[j];
    if (is_free) vmap[j].minus = ncols++;
  }
  const int slack_base = ncols;
  int nslack = 0;
  for (int r = 0; r < m; ++r)
    if (lp.kinds[r] == RowKind::LessEq) ++nslack;
  ncols += nslack;
  const int art_base = ncols;

  // b >= 0 normalization decides which rows need an artificial.
  std::vector<int> row_art(m, -1);
  std::vector<int> row_slack(m, -1);
  {
    int s = 0;
    for (int r = 0; r < m; ++r)
      if (lp.kinds[r] == RowKind::LessEq) row_slack[r] = slack_base + s++;
  }
  int nart = 0;
  for (int r = 0; r < m; ++r) {
    const bool neg = lp.rhs[r] < 0;
    if (lp.kinds[r] == RowKind::Eq || neg) row_art[r] = art_base + nart++;
  }
  ncols += nart;

  const int rhs_col = ncols;
  Tableau tab(m + 2, ncols + 1);  // rows, phase-2 cost, phase-1 cost
  const int cost2 = m;
  const int cost1 = m + 1;

  std::vector<int> basis(m, -1);
  for (int r = 0; r < m; ++r) {
    const bool neg = lp.rhs[r] < 0;
    const Rational sgn = neg ? Rational(-1) : Rational(1);
    for (int j = 0; j < lp.num_vars; ++j) {
      const Rational& a = lp.rows[r][j];
      if (a == 0) continue;
      tab[r][vmap[j].plus] += sgn * a;
      if (vmap[j].minus >= 0) tab[r][vmap[j].minus] -= sgn * a;
    }
    if (row_slack[r] >= 0) tab[r][row_slack[r]] = sgn;
    tab[r][rhs_col] = sgn * lp.rhs[r];
    if (row_art[r] >= 0) {
      tab[r][row_art[r]] = 1;
      basis[r] = row_art[r];
    } else {
      basis[r] = row_slack[r];
    }
  }

  // Phase-2 objective row (negated reduced-cost convention: minimize).
  for (int j = 0; j < lp.num_vars; ++j) {
    const Rational& c = lp.objective[j];
    if (c == 0) continue;
    tab[cost2][vmap[j].plus] += c;
    if (vmap[j].minus >= 0) tab[cost2][vmap[j].minus] -= c;
  }
  // Phase-1 objective: sum of artificials, expressed in nonbasic terms.
  for (int r = 0; r < m; ++r) {
    if (row_art[r] < 0) continue;
    for (int c = 0; c <= ncols; ++c) tab[cost1][c] -= tab[r][c];
  }

  auto run_simplex = [&](int cost_row, int col_limit) -> bool {
    // Bland's rule; returns false on unboundedness.
    for (;;) {
      int enter = -1;
      for (int c = 0; c < col_limit; ++c) {
        if (tab[cost_row][c] < 0) {
          enter = c;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (int r = 0; r < m; ++r) {
        if (tab[r][enter] <= 0) continue;
        Rational ratio = tab[r][rhs_col] / tab[r][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis[r] < basis[leave])) {
          best = ratio;
          leave = r;
        }
      }
      if (leave < 0) return false;
      tab.pivot(leave, enter);
      tab[cost_row][enter] = 0;  // exact zero after elimination
      basis[leave] = enter;
    }
  };

  LpResult res;
  if (nart > 0) {
    bool ok = run_simplex(cost1, art_base);  // artificials never re-enter
    assert(ok);
    (void)ok;
    if (tab[cost1][rhs_col] != 0) {
      res.status = LpStatus::Infeasible;
      return res;
    }
    // Drive any degenerate artificial out of the basis.
    for (int r = 0; r < m; ++r) {
      if (basis[r] < art_base) continue;
      int enter = -1;
      for (int c = 0; c < art_base; ++c) {
        if (tab[r][c] != 0) {
          enter = c;
          break;
        }
      }
      if (enter >= 0) {
        tab.pivot(r, enter);
        basis[r] = enter;
      }
      // A fully zero row is redundant; the artificial stays basic at zero
      // and can never turn positive, so it is harmless in phase 2.
    }
  }

  if (!run_simplex(cost2, art_base)) {
    res.status = LpStatus::Unbounded;
    return res;
  }

  res.status = LpStatus::Optimal;
  QVec col_value(ncols, 0);
  for (int r = 0; r < m; ++r)
    if (basis[r] >= 0) col_value[basis[r]] = tab[r][rhs_col];
  res.x.assign(lp.num_vars, 0);
  for (int j = 0; j < lp.num_vars; ++j) {
    res.x[j] = col_value[vmap[j].plus];
    if (vmap[j].minus >= 0) res.x[j] -= col_value[vmap[j].minus];
  }
  res.objective = -tab[cost2][rhs_col];
  // The cost row holds c_B B^{-1} b negated relative to the running
  // objective value; recompute directly to keep the contract obvious.
  res.objective = dot(lp.objective, res.x);
  return res;
}

}  // namespace subint
