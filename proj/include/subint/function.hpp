#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "subint/polyhedron.hpp"
#include "subint/rational.hpp"

namespace subint {

// One affine piece  y -> <a, y> + b.
struct AffinePiece {
  QVec a;
  Rational b;
};

// Proper lsc convex piecewise-affine function: max of the pieces on an
// explicit polyhedral effective domain, +inf outside.  The explicit domain
// keeps indicator integrands first-class.
class PolyhedralConvexFunction {
 public:
  PolyhedralConvexFunction(std::vector<AffinePiece> pieces,
                           Polyhedron domain);

  int dim() const { return domain_.dim(); }
  const std::vector<AffinePiece>& pieces() const { return pieces_; }
  const Polyhedron& domain() const { return domain_; }

  // Epigraph {(y, r) : r >= value(y)} in dimension dim()+1; memoized.
  Polyhedron epigraph() const;

  // Memoized conjugate; safe under concurrent first access.
  const PolyhedralConvexFunction& conjugate() const;

  std::string str() const;

  static PolyhedralConvexFunction abs_value();               // |.| on R
  static PolyhedralConvexFunction abs_shifted(const Rational& c);  // |.-c|
  static PolyhedralConvexFunction affine(QVec a, Rational b);
  static PolyhedralConvexFunction indicator(Polyhedron domain);
  static PolyhedralConvexFunction max_of(std::vector<AffinePiece> pieces);

 private:
  std::vector<AffinePiece> pieces_;
  Polyhedron domain_;
  struct ConjugateCache;
  std::shared_ptr<ConjugateCache> conj_;
  struct EpigraphCache;
  std::shared_ptr<EpigraphCache> epi_;
};

ExtRat value(const PolyhedralConvexFunction& f, const QVec& y);
ExtRat conjugate_value(const PolyhedralConvexFunction& f, const QVec& xstar);

// f* read off from an epigraph polyhedron E = epi g: the conjugate of the
// function g whose epigraph is E, with pieces from E's generators and the
// domain cut out by E's recession directions.
PolyhedralConvexFunction conjugate_from_epigraph(const Polyhedron& epi);
PolyhedralConvexFunction conjugate_function(const PolyhedralConvexFunction& f);

// Exact Fenchel gap f(x) + f*(s) - <s, x> (nonnegative; +inf allowed).
ExtRat fenchel_gap(const PolyhedralConvexFunction& f, const QVec& x,
                   const QVec& s);

struct EpsSubdiffSet {
  Polyhedron set;  // in dual coordinates
  QVec base_point;
  Rational eps;
  std::shared_ptr<const PolyhedralConvexFunction> source;
};

// {s : f*(s) + f(x) - <s,x> <= eps}; empty when f(x) is not finite.
EpsSubdiffSet eps_subdifferential(const PolyhedralConvexFunction& f,
                                  const QVec& x, const Rational& eps);

// {s : <s, y - x> <= eps for all y in dom}; requires x in dom.
Polyhedron eps_normal(const Polyhedron& dom, const QVec& x,
                      const Rational& eps);

// inf over lambda > 0 of (f(x + lambda u) - f(x) + ell) / lambda, computed
// over the breakpoints of the piecewise-affine section.
ExtRat support_via_quotient(const PolyhedralConvexFunction& f, const QVec& x,
                            const Rational& ell, const QVec& u);

ExtRat directional_derivative(const PolyhedralConvexFunction& f,
                              const QVec& x, const QVec& u);

struct Differentiability {
  bool differentiable = false;
  std::optional<QVec> gradient;
};

Differentiability is_differentiable_at(const PolyhedralConvexFunction& f,
                                       const QVec& x);

}  // namespace subint
