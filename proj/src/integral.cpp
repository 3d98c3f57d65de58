#include "subint/integral.hpp"

#include <sstream>

#include "subint/errors.hpp"

namespace subint {

SubspaceRestriction make_subspace(int dim, const std::vector<QVec>& basis) {
  SubspaceRestriction r{Polyhedron::subspace(dim, basis)};
  return r;
}

IntegralInstance::IntegralInstance(DiscreteMeasureSpace space,
                                   std::vector<PolyhedralConvexFunction> fs,
                                   PolyhedralConvexFunction If,
                                   Polyhedron dom, Polyhedron conj_epi_sum)
    : space_(std::move(space)),
      integrands_(std::move(fs)),
      If_(std::make_shared<PolyhedralConvexFunction>(std::move(If))),
      dom_If_(std::move(dom)),
      conj_epi_sum_(std::move(conj_epi_sum)) {}

IntegralInstance IntegralInstance::assemble(
    DiscreteMeasureSpace space, std::vector<PolyhedralConvexFunction> fs) {
  if (fs.empty()) throw SubintError("assemble: no atoms");
  if (space.atoms.size() != fs.size() || space.weights.size() != fs.size())
    throw SubintError("assemble: atom/weight/integrand count mismatch");
  const int d = fs.front().dim();
  for (const auto& f : fs)
    if (f.dim() != d)
      throw DimensionMismatch("assemble: integrand dimension mismatch");
  for (const auto& w : space.weights)
    if (w <= 0) throw SubintError("assemble: weights must be positive");

  Polyhedron dom = fs.front().domain();
  for (std::size_t t = 1; t < fs.size(); ++t)
    dom = intersect(dom, fs[t].domain());
  dom = dom.canonicalized();
  if (dom.is_empty())
    throw ImproperSum("assemble: intersection of domains is empty");

  // epi (I_f)^* = sum_t mu_t . epi f_t^*: the scaled-epigraph sum realizes
  // the exact infimal convolution of the conjugates, and reading the
  // conjugate back off it materializes I_f with envelope-pruned pieces.
  Polyhedron sum = scale(fs[0].conjugate().epigraph(), space.weights[0]);
  for (std::size_t t = 1; t < fs.size(); ++t) {
    sum = minkowski_sum(sum,
                        scale(fs[t].conjugate().epigraph(), space.weights[t]));
  }
  PolyhedralConvexFunction If_raw = conjugate_from_epigraph(sum);
  if (!equals(If_raw.domain(), dom))
    throw TheoremViolation(
        "assemble: domain from conjugate recession differs from the "
        "intersection of the atom domains");
  PolyhedralConvexFunction If(If_raw.pieces(), dom);

  return IntegralInstance(std::move(space), std::move(fs), std::move(If),
                          std::move(dom), std::move(sum));
}

ExtRat integral_value(const IntegralInstance& inst, const QVec& x) {
  ExtRat total{Rational(0)};
  for (int t = 0; t < inst.num_atoms(); ++t) {
    const ExtRat v = value(inst.integrand(t), x);
    if (!v.is_finite()) return ExtRat::plus_inf();
    total = ExtRat(total.value() + inst.weight(t) * v.value());
  }
  return total;
}

Polyhedron aumann_integral(const IntegralInstance& inst, const QVec& x,
                           const ErrorAllocation& alloc) {
  if (static_cast<int>(alloc.ell.size()) != inst.num_atoms())
    throw SubintError("aumann_integral: allocation size mismatch");
  Rational mass = 0;
  for (int t = 0; t < inst.num_atoms(); ++t) {
    if (alloc.ell[t] < 0)
      throw SubintError("aumann_integral: negative allocation");
    mass += inst.weight(t) * alloc.ell[t];
  }
  if (mass > alloc.budget)
    throw SubintError("aumann_integral: allocation exceeds its budget");
  if (!integral_value(inst, x).is_finite())
    throw SubintError("aumann_integral: I_f(x) not finite");
  std::optional<Polyhedron> acc;
  for (int t = 0; t < inst.num_atoms(); ++t) {
    const Polyhedron part =
        eps_subdifferential(inst.integrand(t), x, alloc.ell[t]).set;
    if (part.is_empty()) {
      std::ostringstream os;
      os << "aumann_integral: empty summand at atom "
         << inst.space().atoms[t];
      throw EmptySummand(os.str());
    }
    Polyhedron scaled = scale(part, inst.weight(t));
    acc = acc ? minkowski_sum(*acc, scaled) : scaled;
  }
  return acc->canonicalized();
}

Polyhedron eps_normal_dom(const IntegralInstance& inst, const QVec& x,
                          const Rational& eps) {
  if (!inst.dom().contains(x))
    throw PointNotInSet("eps_normal_dom: x outside dom I_f");
  return eps_normal(inst.dom(), x, eps);
}

IntegralInstance augment_with_indicator(const IntegralInstance& inst,
                                        const SubspaceRestriction& L) {
  if (L.set.dim() != inst.dim())
    throw DimensionMismatch("augment_with_indicator: dimension mismatch");
  if (!is_linear_subspace(L.set))
    throw SubintError("augment_with_indicator: restriction is not a subspace");
  DiscreteMeasureSpace space = inst.space();
  space.atoms.push_back("omega0");
  space.weights.push_back(1);
  std::vector<PolyhedralConvexFunction> fs;
  for (int t = 0; t < inst.num_atoms(); ++t) fs.push_back(inst.integrand(t));
  fs.push_back(PolyhedralConvexFunction::indicator(L.set));
  return IntegralInstance::assemble(std::move(space), std::move(fs));
}

}  // namespace subint
