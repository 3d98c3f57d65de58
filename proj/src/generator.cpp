#include "subint/generator.hpp"

#include "subint/errors.hpp"

namespace subint {

Profile profile_from_name(const std::string& name) {
  if (name == "box-domains") return Profile::BoxDomains;
  if (name == "indicator-heavy") return Profile::IndicatorHeavy;
  if (name == "affine-only") return Profile::AffineOnly;
  if (name == "kinked") return Profile::Kinked;
  if (name == "restricted-subspace") return Profile::RestrictedSubspace;
  throw SchemaError("unknown profile '" + name + "'");
}

std::string profile_name(Profile p) {
  switch (p) {
    case Profile::BoxDomains:
      return "box-domains";
    case Profile::IndicatorHeavy:
      return "indicator-heavy";
    case Profile::AffineOnly:
      return "affine-only";
    case Profile::Kinked:
      return "kinked";
    case Profile::RestrictedSubspace:
      return "restricted-subspace";
  }
  return "?";
}

namespace {

// Box strictly containing the origin, so the intersection of any family
// of generated domains keeps 0 in its interior and the origin stays a
// valid anchor for every query type.
Polyhedron random_box(SplitMix& rng, int dim) {
  QVec lo(dim), hi(dim);
  for (int i = 0; i < dim; ++i) {
    lo[i] = frac(rng.uniform(-32, -1), 8);
    hi[i] = frac(rng.uniform(1, 32), 8);
  }
  return Polyhedron::box(lo, hi);
}

PolyhedralConvexFunction random_atom(SplitMix& rng, int dim,
                                     Profile profile) {
  switch (profile) {
    case Profile::AffineOnly:
      return PolyhedralConvexFunction::affine(rng.vec(dim, -4, 4, 8),
                                              rng.rational(-4, 4, 8));
    case Profile::IndicatorHeavy:
      if (rng.uniform(0, 2) != 0)
        return PolyhedralConvexFunction::indicator(random_box(rng, dim));
      break;
    case Profile::Kinked: {
      // Pieces crossing at the origin: shared intercept, mirrored slopes.
      std::vector<AffinePiece> pieces;
      const Rational b = rng.rational(-2, 2, 8);
      const QVec a = rng.vec(dim, -4, 4, 8);
      pieces.push_back({a, b});
      pieces.push_back({vneg(a), b});
      if (rng.uniform(0, 1) == 0)
        pieces.push_back({rng.vec(dim, -4, 4, 8), b});
      return PolyhedralConvexFunction::max_of(std::move(pieces));
    }
    default:
      break;
  }
  std::vector<AffinePiece> pieces;
  const int n = rng.uniform(1, 5);
  for (int i = 0; i < n; ++i)
    pieces.push_back({rng.vec(dim, -4, 4, 8), rng.rational(-4, 4, 8)});
  Polyhedron dom = rng.uniform(0, 1) == 0 ? random_box(rng, dim)
                                          : Polyhedron::whole_space(dim);
  return PolyhedralConvexFunction(std::move(pieces), std::move(dom));
}

}  // namespace

IntegralInstance generate_instance(SplitMix& rng, Profile profile,
                                   int max_dim, int max_atoms) {
  const int dim = rng.uniform(1, max_dim);
  const int atoms = rng.uniform(1, max_atoms);
  DiscreteMeasureSpace space;
  std::vector<PolyhedralConvexFunction> fs;
  for (int t = 0; t < atoms; ++t) {
    space.atoms.push_back("t" + std::to_string(t));
    space.weights.push_back(rng.rational(1, 4, 8));
    fs.push_back(random_atom(rng, dim, profile));
  }
  return IntegralInstance::assemble(std::move(space), std::move(fs));
}

QVec pick_query_point(SplitMix& rng, const IntegralInstance& inst) {
  // 0 is in every generated domain; a third of the queries move to a
  // domain vertex to hit non-trivial normal sets.
  const VRep& dv = inst.dom().vrep();
  if (!dv.vertices.empty() && rng.uniform(0, 2) == 0) {
    return dv.vertices[rng.uniform(
        0, static_cast<int>(dv.vertices.size()) - 1)];
  }
  return zero_vec(inst.dim());
}

Json generate_instance_document(std::uint64_t seed, Profile profile) {
  SplitMix rng(seed);
  const IntegralInstance inst = generate_instance(rng, profile);
  Json doc = instance_to_json(inst);
  doc["seed"] = seed;
  doc["profile"] = profile_name(profile);

  Json queries = Json::array();
  const QVec x = pick_query_point(rng, inst);
  for (const char* eps : {"0", "1/4", "1"}) {
    Json q;
    q["type"] = "sum_rule";
    q["x"] = qvec_to_json(x);
    q["eps"] = eps;
    queries.push_back(std::move(q));
  }
  {
    Json q;
    q["type"] = "conjugate";
    q["num_random"] = 25;
    q["seed"] = rng.uniform(1, 1 << 20);
    queries.push_back(std::move(q));
  }
  {
    Json q;
    q["type"] = "epigraph";
    queries.push_back(std::move(q));
  }
  {
    Json q;
    q["type"] = "normal_sets";
    q["x"] = qvec_to_json(x);
    q["eps"] = "1/4";
    queries.push_back(std::move(q));
  }
  if (profile == Profile::RestrictedSubspace) {
    // Coordinate subspace through the anchor (the anchor is either the
    // origin or a domain vertex; only the origin is guaranteed inside, so
    // restrict around the origin).
    const int keep = rng.uniform(1, inst.dim());
    Json basis = Json::array();
    for (int i = 0; i < keep; ++i)
      basis.push_back(qvec_to_json(unit_vec(inst.dim(), i)));
    Json q;
    q["type"] = "restricted";
    q["x"] = qvec_to_json(zero_vec(inst.dim()));
    q["eps"] = "1/4";
    q["L"] = std::move(basis);
    queries.push_back(std::move(q));
  }
  {
    Json q;
    q["type"] = "gateaux";
    q["x"] = qvec_to_json(zero_vec(inst.dim()));
    queries.push_back(std::move(q));
  }
  doc["queries"] = std::move(queries);
  return doc;
}

}  // namespace subint
