#pragma once

#include <json.hpp>

#include "subint/calculus.hpp"
#include "subint/sequential.hpp"

namespace subint {

using Json = nlohmann::json;

// Desk-scale guardrails; double description is exponential in the worst
// case, so inputs beyond these need an explicit override.
struct Limits {
  int max_dim = 6;
  int max_atoms = 16;
  int max_pieces = 16;
  int max_constraints = 32;
  bool enforce = true;
};

// Exact rational string grammar -?[0-9]+(/[1-9][0-9]*)?; json integers
// are accepted on input, strings are always emitted.
Rational rational_from_json(const Json& j);
Json rational_to_json(const Rational& q);

QVec qvec_from_json(const Json& j);
Json qvec_to_json(const QVec& v);

// {"A": [[..]], "b": [..]} and/or {"vertices": [[..]], "rays": [[..]]}.
Polyhedron polyhedron_from_json(const Json& j, int dim, const Limits& lim);
Json polyhedron_to_json(const Polyhedron& p);

// {"pieces": [{"a": [..], "b": ".."}], "domain": {..}} (domain optional).
PolyhedralConvexFunction function_from_json(const Json& j, int dim,
                                            const Limits& lim);
Json function_to_json(const PolyhedralConvexFunction& f);

// {"dimension": d, "atoms": [{"id","weight","function"}]}.
IntegralInstance instance_from_json(const Json& j, const Limits& lim);
Json instance_to_json(const IntegralInstance& inst);

DecompositionCertificate certificate_from_json(const Json& j, int dim,
                                               int atoms);
Json certificate_to_json(const DecompositionCertificate& cert);

Json report_to_json(const CheckReport& rep);

}  // namespace subint
