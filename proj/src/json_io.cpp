#include "subint/json_io.hpp"

#include "subint/errors.hpp"

namespace subint {

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer())
    return Rational(static_cast<long>(j.get<long long>()));
  if (!j.is_string())
    throw SchemaError("rational must be a string or integer: " + j.dump());
  const auto parsed = parse_rational(j.get<std::string>());
  if (!parsed)
    throw SchemaError("malformed rational '" + j.get<std::string>() + "'");
  return *parsed;
}

Json rational_to_json(const Rational& q) { return to_string(q); }

QVec qvec_from_json(const Json& j) {
  if (!j.is_array()) throw SchemaError("vector must be an array");
  QVec v;
  for (const auto& c : j) v.push_back(rational_from_json(c));
  return v;
}

Json qvec_to_json(const QVec& v) {
  Json j = Json::array();
  for (const auto& c : v) j.push_back(rational_to_json(c));
  return j;
}

namespace {

void check_dim(const QVec& v, int dim, const char* what) {
  if (static_cast<int>(v.size()) != dim)
    throw SchemaError(std::string(what) + ": expected dimension " +
                      std::to_string(dim));
}

}  // namespace

Polyhedron polyhedron_from_json(const Json& j, int dim, const Limits& lim) {
  if (!j.is_object()) throw SchemaError("polyhedron must be an object");
  const bool has_h = j.contains("A") || j.contains("b");
  const bool has_v = j.contains("vertices") || j.contains("rays");
  if (!has_h && !has_v)
    throw SchemaError("polyhedron needs an H-rep or a V-rep");
  if (has_h) {
    if (!j.contains("A") || !j.contains("b"))
      throw SchemaError("H-rep needs both A and b");
    const Json& a = j.at("A");
    const Json& b = j.at("b");
    if (!a.is_array() || !b.is_array() || a.size() != b.size())
      throw SchemaError("H-rep shape mismatch");
    if (lim.enforce && static_cast<int>(a.size()) > lim.max_constraints)
      throw LimitExceeded("too many constraints (override to allow)");
    std::vector<HalfSpace> rows;
    for (std::size_t i = 0; i < a.size(); ++i) {
      HalfSpace h{qvec_from_json(a[i]), rational_from_json(b[i])};
      check_dim(h.normal, dim, "constraint row");
      rows.push_back(std::move(h));
    }
    return Polyhedron::from_hrep(dim, std::move(rows));
  }
  std::vector<QVec> vertices, rays;
  if (j.contains("vertices"))
    for (const auto& v : j.at("vertices")) {
      vertices.push_back(qvec_from_json(v));
      check_dim(vertices.back(), dim, "vertex");
    }
  if (j.contains("rays"))
    for (const auto& r : j.at("rays")) {
      rays.push_back(qvec_from_json(r));
      check_dim(rays.back(), dim, "ray");
    }
  return Polyhedron::from_generators(dim, std::move(vertices),
                                     std::move(rays));
}

Json polyhedron_to_json(const Polyhedron& p) {
  Json j;
  Json a = Json::array(), b = Json::array();
  for (const auto& h : p.hrep()) {
    a.push_back(qvec_to_json(h.normal));
    b.push_back(rational_to_json(h.offset));
  }
  j["A"] = std::move(a);
  j["b"] = std::move(b);
  Json verts = Json::array(), rays = Json::array();
  for (const auto& v : p.vrep().vertices) verts.push_back(qvec_to_json(v));
  for (const auto& r : p.vrep().rays) rays.push_back(qvec_to_json(r));
  j["vertices"] = std::move(verts);
  j["rays"] = std::move(rays);
  return j;
}

PolyhedralConvexFunction function_from_json(const Json& j, int dim,
                                            const Limits& lim) {
  if (!j.is_object() || !j.contains("pieces"))
    throw SchemaError("function needs a pieces array");
  std::vector<AffinePiece> pieces;
  const Json& parr = j.at("pieces");
  if (!parr.is_array() || parr.empty())
    throw SchemaError("pieces must be a nonempty array");
  if (lim.enforce && static_cast<int>(parr.size()) > lim.max_pieces)
    throw LimitExceeded("too many pieces (override to allow)");
  for (const auto& p : parr) {
    if (!p.contains("a") || !p.contains("b"))
      throw SchemaError("piece needs fields a and b");
    AffinePiece piece{qvec_from_json(p.at("a")),
                      rational_from_json(p.at("b"))};
    check_dim(piece.a, dim, "piece slope");
    pieces.push_back(std::move(piece));
  }
  Polyhedron dom = j.contains("domain")
                       ? polyhedron_from_json(j.at("domain"), dim, lim)
                       : Polyhedron::whole_space(dim);
  return PolyhedralConvexFunction(std::move(pieces), std::move(dom));
}

Json function_to_json(const PolyhedralConvexFunction& f) {
  Json j;
  Json pieces = Json::array();
  for (const auto& p : f.pieces()) {
    Json piece;
    piece["a"] = qvec_to_json(p.a);
    piece["b"] = rational_to_json(p.b);
    pieces.push_back(std::move(piece));
  }
  j["pieces"] = std::move(pieces);
  Json dom;
  Json a = Json::array(), b = Json::array();
  for (const auto& h : f.domain().hrep()) {
    a.push_back(qvec_to_json(h.normal));
    b.push_back(rational_to_json(h.offset));
  }
  dom["A"] = std::move(a);
  dom["b"] = std::move(b);
  j["domain"] = std::move(dom);
  return j;
}

IntegralInstance instance_from_json(const Json& j, const Limits& lim) {
  if (!j.is_object() || !j.contains("dimension") || !j.contains("atoms"))
    throw SchemaError("instance needs dimension and atoms");
  if (!j.at("dimension").is_number_integer())
    throw SchemaError("dimension must be an integer");
  const int dim = j.at("dimension").get<int>();
  if (dim < 1) throw SchemaError("dimension must be >= 1");
  if (lim.enforce && dim > lim.max_dim)
    throw LimitExceeded("dimension above the desk-scale cap");
  const Json& atoms = j.at("atoms");
  if (!atoms.is_array() || atoms.empty())
    throw SchemaError("atoms must be a nonempty array");
  if (lim.enforce && static_cast<int>(atoms.size()) > lim.max_atoms)
    throw LimitExceeded("too many atoms (override to allow)");
  DiscreteMeasureSpace space;
  std::vector<PolyhedralConvexFunction> fs;
  for (const auto& atom : atoms) {
    if (!atom.contains("id") || !atom.contains("weight") ||
        !atom.contains("function"))
      throw SchemaError("atom needs id, weight and function");
    space.atoms.push_back(atom.at("id").get<std::string>());
    const Rational w = rational_from_json(atom.at("weight"));
    if (w <= 0) throw SchemaError("atom weight must be positive");
    space.weights.push_back(w);
    fs.push_back(function_from_json(atom.at("function"), dim, lim));
  }
  return IntegralInstance::assemble(std::move(space), std::move(fs));
}

Json instance_to_json(const IntegralInstance& inst) {
  Json j;
  j["dimension"] = inst.dim();
  Json atoms = Json::array();
  for (int t = 0; t < inst.num_atoms(); ++t) {
    Json atom;
    atom["id"] = inst.space().atoms[t];
    atom["weight"] = rational_to_json(inst.weight(t));
    atom["function"] = function_to_json(inst.integrand(t));
    atoms.push_back(std::move(atom));
  }
  j["atoms"] = std::move(atoms);
  return j;
}

DecompositionCertificate certificate_from_json(const Json& j, int dim,
                                               int atoms) {
  DecompositionCertificate cert;
  if (!j.is_object()) throw SchemaError("certificate must be an object");
  for (const char* key : {"eps1", "eps2", "ell", "selections", "normal"})
    if (!j.contains(key))
      throw SchemaError(std::string("certificate needs field ") + key);
  cert.eps1 = rational_from_json(j.at("eps1"));
  cert.eps2 = rational_from_json(j.at("eps2"));
  cert.alloc.budget = cert.eps1;
  for (const auto& e : j.at("ell"))
    cert.alloc.ell.push_back(rational_from_json(e));
  for (const auto& s : j.at("selections")) {
    cert.selections.push_back(qvec_from_json(s));
    check_dim(cert.selections.back(), dim, "selection");
  }
  cert.normal = qvec_from_json(j.at("normal"));
  check_dim(cert.normal, dim, "normal component");
  if (static_cast<int>(cert.alloc.ell.size()) != atoms ||
      static_cast<int>(cert.selections.size()) != atoms)
    throw SchemaError("certificate arity mismatch");
  return cert;
}

Json certificate_to_json(const DecompositionCertificate& cert) {
  Json j;
  j["eps1"] = rational_to_json(cert.eps1);
  j["eps2"] = rational_to_json(cert.eps2);
  Json ell = Json::array();
  for (const auto& e : cert.alloc.ell) ell.push_back(rational_to_json(e));
  j["ell"] = std::move(ell);
  Json sel = Json::array();
  for (const auto& s : cert.selections) sel.push_back(qvec_to_json(s));
  j["selections"] = std::move(sel);
  j["normal"] = qvec_to_json(cert.normal);
  return j;
}

Json report_to_json(const CheckReport& rep) {
  Json j;
  j["theorem"] = rep.theorem;
  j["status"] = rep.pass ? "pass" : "fail";
  j["witnesses"] = rep.witnesses;
  j["counterexample"] =
      rep.counterexample ? Json(*rep.counterexample) : Json(nullptr);
  j["notes"] = rep.notes;
  return j;
}

}  // namespace subint
