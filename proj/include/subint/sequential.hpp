#pragma once

#include <utility>
#include <vector>

#include "subint/calculus.hpp"

namespace subint {

// Exact subgradient pair produced from an approximate one: xstar_t is an
// exact subgradient of the integrand at the displaced point x_t, with all
// four bounds certified in rational arithmetic.
struct ApproxPair {
  QVec x_t;
  QVec xstar_t;
  Rational residual;      // |f(x_t) - <xstar_t, x_t - x0> - f(x0)|
  Rational displacement;  // max-norm of x_t - x0
};

// Moves an ell-subgradient at x0 to an exact subgradient nearby by
// minimizing f - <zstar,.> + (ell/lambda) max-norm penalty exactly.
// Guarantees: xstar_t in the subdifferential at x_t, displacement <=
// lambda, 1-norm dual shift <= ell/lambda, residual <= 2 ell.
ApproxPair br_step(const PolyhedralConvexFunction& f, const QVec& x0,
                   const QVec& zstar, const Rational& ell,
                   const Rational& lambda);

struct ApproxStep {
  Rational eps;
  Rational lambda;
  QVec target;  // the decomposed point: xstar itself, or its projection
  QVec normal;  // lambda* component of the decomposition
  std::vector<ApproxPair> pairs;
  Rational condition_c;    // sum_t mu_t residual_t
  Rational displacement;   // max_t displacement_t
  Rational aggregate_gap;  // max-norm of sum mu_t xstar_t + normal - xstar
};

struct ApproxRun {
  std::vector<std::pair<Rational, Rational>> schedule;  // (eps_k, lambda_k)
  std::vector<ApproxStep> steps;
};

// For each schedule entry: decompose (projecting onto the shrinking
// eps_k-subdifferential when the queried point falls outside it), then run
// br_step per atom.  Requires membership at the first eps.
ApproxRun br_decompose_run(
    const IntegralInstance& inst, const QVec& x, const QVec& xstar,
    const std::vector<std::pair<Rational, Rational>>& schedule);

// Shift toward a relative-interior point of dom f*: returns the shifted
// dual point and its (nonnegative) exact gap at x.
std::pair<QVec, Rational> interior_shift(const PolyhedralConvexFunction& f,
                                         const QVec& x, const QVec& zstar,
                                         const QVec& x0star,
                                         const Rational& lambda);

}  // namespace subint
