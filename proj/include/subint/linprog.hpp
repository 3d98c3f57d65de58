#pragma once

#include <vector>

#include "subint/rational.hpp"

namespace subint {

// Exact rational LP:  minimize c.x  subject to the given rows, with
// per-variable sign (nonnegative by default, or free).  Solved by a dense
// two-phase tableau simplex with Bland's rule, so every answer is an exact
// feasibility/optimality certificate.
enum class RowKind { LessEq, Eq };

struct LinearProgram {
  int num_vars = 0;
  QVec objective;                 // size num_vars
  std::vector<QVec> rows;         // each size num_vars
  QVec rhs;
  std::vector<RowKind> kinds;
  std::vector<bool> free_var;     // empty means all nonnegative

  int add_var(const Rational& cost, bool is_free = false);
  void add_row(QVec coeffs, RowKind kind, Rational b);
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  QVec x;              // primal solution when Optimal
  Rational objective;  // c.x when Optimal
};

LpResult solve_lp(const LinearProgram& lp);

}  // namespace subint
