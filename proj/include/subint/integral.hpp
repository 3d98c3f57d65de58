#pragma once

#include <map>
#include <string>
#include <vector>

#include "subint/function.hpp"

namespace subint {

// Finite atomic measure space: ordered atoms with strictly positive
// rational weights.
struct DiscreteMeasureSpace {
  std::vector<std::string> atoms;
  QVec weights;
};

// Per-atom nonnegative error budgets ell_t with sum_t mu_t ell_t <= budget.
struct ErrorAllocation {
  QVec ell;
  Rational budget;
};

// Linear subspace used to restrict statements; kept as a polyhedron whose
// generators come in +/- pairs.
struct SubspaceRestriction {
  Polyhedron set;
};

SubspaceRestriction make_subspace(int dim, const std::vector<QVec>& basis);

// The assembled integral functional: atoms, integrands, the materialized
// sum I_f, its domain, and the weighted Minkowski sum of the conjugate
// epigraphs that underlies all the dual-side computations.
class IntegralInstance {
 public:
  static IntegralInstance assemble(DiscreteMeasureSpace space,
                                   std::vector<PolyhedralConvexFunction> fs);

  int dim() const { return integrands_.front().dim(); }
  int num_atoms() const { return static_cast<int>(integrands_.size()); }
  const DiscreteMeasureSpace& space() const { return space_; }
  const Rational& weight(int t) const { return space_.weights[t]; }
  const PolyhedralConvexFunction& integrand(int t) const {
    return integrands_[t];
  }
  const PolyhedralConvexFunction& integral_function() const { return *If_; }
  const Polyhedron& dom() const { return dom_If_; }
  // E = sum_t mu_t . epi f_t^* (equal to epi (I_f)^*).
  const Polyhedron& conjugate_epigraph_sum() const { return conj_epi_sum_; }

 private:
  IntegralInstance(DiscreteMeasureSpace space,
                   std::vector<PolyhedralConvexFunction> fs,
                   PolyhedralConvexFunction If, Polyhedron dom,
                   Polyhedron conj_epi_sum);

  DiscreteMeasureSpace space_;
  std::vector<PolyhedralConvexFunction> integrands_;
  std::shared_ptr<PolyhedralConvexFunction> If_;
  Polyhedron dom_If_;
  Polyhedron conj_epi_sum_;
};

ExtRat integral_value(const IntegralInstance& inst, const QVec& x);

// sum_t mu_t . eps-subdifferential of f_t at x with budget ell(t),
// as an iterated Minkowski sum.
Polyhedron aumann_integral(const IntegralInstance& inst, const QVec& x,
                           const ErrorAllocation& alloc);

Polyhedron eps_normal_dom(const IntegralInstance& inst, const QVec& x,
                          const Rational& eps);

// New instance with one extra unit-weight atom carrying the indicator of
// the subspace; reduces restricted statements to unrestricted ones.
IntegralInstance augment_with_indicator(const IntegralInstance& inst,
                                        const SubspaceRestriction& L);

}  // namespace subint
