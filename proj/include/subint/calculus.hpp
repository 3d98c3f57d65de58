#pragma once

#include <optional>
#include <string>
#include <vector>

#include "subint/integral.hpp"
#include "subint/rng.hpp"

namespace subint {

// Witness for membership of xstar in the decomposed right-hand side:
// per-atom eps-subgradient selections plus a normal component, with an
// explicit error split eps1 + eps2 <= eps.
struct DecompositionCertificate {
  Rational eps1;
  Rational eps2;
  ErrorAllocation alloc;         // budget == eps1
  std::vector<QVec> selections;  // y*_t per atom
  QVec normal;                   // lambda*
};

// E = sum_t mu_t . epi f_t^*, G = sum_t mu_t . (convexified graph of
// f_t^*); both live in dimension d+1 and satisfy E = G + {0} x R_+.
struct EpigraphSumSet {
  Polyhedron E;
  Polyhedron G;
};

// Machine-checkable outcome of one identity check.
struct CheckReport {
  std::string theorem;
  bool pass = true;
  std::vector<std::string> witnesses;
  std::optional<std::string> counterexample;
  std::vector<std::string> notes;  // e.g. which closures collapse here
};

// {s : (s, <s,x> + level) in Q} for an epigraph-like polyhedron Q.
Polyhedron substitute_epi_level(const Polyhedron& q, const QVec& x,
                                const Rational& level);

// eps-subdifferential of I_f at x, computed through the conjugate
// epigraph sum.
Polyhedron lhs_eps_subdifferential(const IntegralInstance& inst,
                                   const QVec& x, const Rational& eps);

// One exact LP produces a certificate; the error split is decided inside
// the program.  Throws NotInSubdifferential when xstar is not a member,
// TheoremViolation if the program is infeasible although it is.
DecompositionCertificate decompose(const IntegralInstance& inst,
                                   const QVec& x, const QVec& xstar,
                                   const Rational& eps);

// Pure evaluation of all certificate invariants; no LP involved.
bool verify_certificate(const IntegralInstance& inst, const QVec& x,
                        const QVec& xstar, const Rational& eps,
                        const DecompositionCertificate& cert);

// Both inclusions of the subdifferential sum rule: sampled assembled
// points land inside the left side; every vertex of the left side
// receives a verified certificate and every ray lies in the normal cone.
CheckReport check_sum_rule(const IntegralInstance& inst, const QVec& x,
                           const Rational& eps,
                           std::uint64_t seed = 0x5eed, int samples = 50);

// Exact value of min sum_t mu_t f_t^*(s_t) over splittings
// sum_t mu_t s_t = xstar; +inf when no splitting exists.
ExtRat inf_convolution_value(const IntegralInstance& inst, const QVec& xstar);

EpigraphSumSet build_epigraph_sets(const IntegralInstance& inst);

// The four equivalent descriptions of the eps-normal set of dom I_f,
// each computed along a different route, checked pairwise equal.
CheckReport normal_set_four_ways(const IntegralInstance& inst, const QVec& x,
                                 const Rational& eps);

// Restricted variant through the indicator-augmented instance.
CheckReport check_restricted_formula(const IntegralInstance& inst,
                                     const SubspaceRestriction& L,
                                     const QVec& x, const Rational& eps,
                                     std::uint64_t seed = 0x5eed);

// Deterministic sample from a nonempty polyhedron: convex combination of
// vertices plus a bounded ray contribution.
QVec sample_point(const Polyhedron& p, SplitMix& rng, bool use_rays = true);

}  // namespace subint
