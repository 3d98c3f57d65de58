#pragma once

#include <string>
#include <vector>

#include "subint/integral.hpp"

namespace subint {

// Floating-point reproductions of the two analytic model families on
// truncations of the countable-atom space with weights 2^{-n} (squares)
// and 1 (powers).  These never feed the exact core.

struct L2Report {
  int dim = 0;
  std::vector<double> point;
  double value_direct = 0;      // sum_n 2^{-n} f_n(x)
  double value_norm = 0;        // squared euclidean norm
  double gradient_error = 0;    // max-norm of assembled gradient - 2x
  double l1_surrogate = 0;      // sum_n 2^{-n} ||grad f_n(x)||
  bool pass = false;            // value and gradient agree to 1e-12
};

L2Report l2_example(int dim, const std::vector<double>& point);

// Surrogate values for the harmonic point x_n = 1/n at several
// truncations; strictly increasing growth is the divergence witness.
std::vector<double> l2_divergence_surrogates(const std::vector<int>& dims);

struct L1GateauxTrace {
  int n = 0;
  std::vector<double> steps;
  std::vector<double> quotients;  // |h|^{1/n} along the shrinking steps
  bool reached_threshold = false;  // fell below 1e-3
  bool monotone = false;
};

struct L1Report {
  int n_max = 0;
  std::vector<double> frechet_quotients;  // value n^{-1/n} per n
  double max_abs_error = 0;  // against the closed form, per-n difference
  bool eventually_increasing = false;  // nondecreasing from n = 3 on
  double at_n_max = 0;
  std::vector<L1GateauxTrace> gateaux;  // directions e_n, n <= min(100, n_max)
  double gradient_at_zero_norm = 0;
  bool pass = false;
};

L1Report l1_example(int n_max);

struct GateauxReport {
  bool integral_differentiable = false;
  std::vector<bool> atom_differentiable;
  bool equivalence_holds = false;
  bool gradient_additivity = false;  // exact, when differentiable
  std::string detail;
};

// Differentiability correspondence for a polyhedral instance at an
// interior point of the domain, with exact gradient additivity.
GateauxReport gateaux_correspondence(const IntegralInstance& inst,
                                     const QVec& x);

}  // namespace subint
