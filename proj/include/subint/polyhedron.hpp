#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "subint/rational.hpp"

namespace subint {

// Closed halfspace  { y : <normal, y> <= offset }.
struct HalfSpace {
  QVec normal;
  Rational offset;
};

struct VRep {
  std::vector<QVec> vertices;
  std::vector<QVec> rays;  // lineality appears as +/- ray pairs
};

// Generators of a polyhedral cone {z : C z <= 0}.
struct ConeGenerators {
  std::vector<QVec> lineality;
  std::vector<QVec> rays;
};

// Double-description run over the rows of C (one pass of constraint
// insertion starting from the full space).
ConeGenerators dd_cone(const std::vector<QVec>& rows, int dim);

// Convex polyhedron carrying both representations; conversions are cached
// behind a shared, mutex-guarded box so values stay shareable across
// threads after construction.
class Polyhedron {
 public:
  static Polyhedron from_hrep(int dim, std::vector<HalfSpace> halfspaces);
  static Polyhedron from_generators(int dim, std::vector<QVec> vertices,
                                    std::vector<QVec> rays);
  static Polyhedron empty(int dim);
  static Polyhedron whole_space(int dim);
  static Polyhedron point(const QVec& p);
  static Polyhedron box(const QVec& lo, const QVec& hi);
  // Linear subspace spanned by the given vectors (may be empty: {0}).
  static Polyhedron subspace(int dim, const std::vector<QVec>& basis);

  int dim() const { return dim_; }
  bool is_empty() const;
  bool is_bounded() const;

  const std::vector<HalfSpace>& hrep() const;
  const VRep& vrep() const;

  // Canonical irredundant form (both representations recomputed).
  Polyhedron canonicalized() const;

  bool contains(const QVec& y) const;
  // Direction u lies in the recession cone.
  bool contains_direction(const QVec& u) const;

  std::string str() const;

 private:
  Polyhedron() = default;

  struct Cache;
  int dim_ = 0;
  std::shared_ptr<Cache> cache_;
};

ExtRat support(const Polyhedron& p, const QVec& u);
Polyhedron minkowski_sum(const Polyhedron& p, const Polyhedron& q);
Polyhedron recession_cone(const Polyhedron& p);
Polyhedron polar(const Polyhedron& p);
bool equals(const Polyhedron& p, const Polyhedron& q);
bool contains(const Polyhedron& p, const QVec& y);
bool subset_of(const Polyhedron& p, const Polyhedron& q);
Polyhedron intersect(const Polyhedron& p, const Polyhedron& q);
Polyhedron scale(const Polyhedron& p, const Rational& c);

// Whether p is a linear subspace (0 in p and p = -p).
bool is_linear_subspace(const Polyhedron& p);

// Constraints of p that hold with equality on all of p.
std::vector<bool> implicit_equalities(const Polyhedron& p);
// Relative-interior membership test.
bool in_relative_interior(const Polyhedron& p, const QVec& y);

HalfSpace normalize_halfspace(HalfSpace h);

}  // namespace subint
