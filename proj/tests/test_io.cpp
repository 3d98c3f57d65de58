#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "subint/errors.hpp"
#include "subint/generator.hpp"
#include "subint/runner.hpp"

using namespace subint;

TEST_CASE("rational grammar is enforced exactly") {
  CHECK(*parse_rational("-3/4") == frac(-3, 4));
  CHECK(*parse_rational("17") == 17);
  CHECK(*parse_rational("-0") == 0);
  CHECK_FALSE(parse_rational("3/0").has_value());
  CHECK_FALSE(parse_rational("3/04").has_value());
  CHECK_FALSE(parse_rational("1.5").has_value());
  CHECK_FALSE(parse_rational("+2").has_value());
  CHECK_FALSE(parse_rational("2/-3").has_value());
  CHECK_FALSE(parse_rational("").has_value());
  CHECK_FALSE(parse_rational("a").has_value());

  CHECK(rational_from_json(Json(7)) == 7);
  CHECK(rational_from_json(Json("5/10")) == frac(1, 2));
  CHECK_THROWS_AS(rational_from_json(Json("0.5")), SchemaError);
  CHECK_THROWS_AS(rational_from_json(Json(0.5)), SchemaError);
}

TEST_CASE("polyhedron and function json round trips") {
  Limits lim;
  const Json hbox = Json::parse(
      R"({"A": [["1","0"],["-1","0"],["0","1"],["0","-1"]],
          "b": ["1","1","1","1"]})");
  Polyhedron box = polyhedron_from_json(hbox, 2, lim);
  Polyhedron again = polyhedron_from_json(polyhedron_to_json(box), 2, lim);
  CHECK(equals(box, again));

  const Json vline = Json::parse(
      R"({"vertices": [["0","0"]], "rays": [["1","0"],["-1","0"]]})");
  Polyhedron line = polyhedron_from_json(vline, 2, lim);
  CHECK(is_linear_subspace(line));

  const Json fj = Json::parse(
      R"({"pieces": [{"a": ["1"], "b": "0"}, {"a": ["-1"], "b": "0"}]})");
  PolyhedralConvexFunction f = function_from_json(fj, 1, lim);
  PolyhedralConvexFunction f2 =
      function_from_json(function_to_json(f), 1, lim);
  CHECK(equals(f.epigraph(), f2.epigraph()));
}

TEST_CASE("instance round trip preserves the functional") {
  SplitMix rng(15);
  for (int iter = 0; iter < 6; ++iter) {
    const IntegralInstance inst =
        generate_instance(rng, Profile::BoxDomains, 3, 4);
    Limits lim;
    const IntegralInstance back =
        instance_from_json(instance_to_json(inst), lim);
    REQUIRE(back.num_atoms() == inst.num_atoms());
    for (int k = 0; k < 20; ++k) {
      const QVec x = rng.vec(inst.dim(), -4, 4, 8);
      CHECK(integral_value(back, x) == integral_value(inst, x));
    }
    CHECK(equals(back.dom(), inst.dom()));
  }
}

TEST_CASE("schema violations raise schema errors") {
  Limits lim;
  CHECK_THROWS_AS(instance_from_json(Json::parse(R"({"atoms": []})"), lim),
                  SchemaError);
  CHECK_THROWS_AS(
      instance_from_json(
          Json::parse(R"({"dimension": 1, "atoms": []})"), lim),
      SchemaError);
  CHECK_THROWS_AS(
      instance_from_json(
          Json::parse(
              R"({"dimension": 1, "atoms": [{"id": "a", "weight": "0",
                  "function": {"pieces": [{"a": ["1"], "b": "0"}]}}]})"),
          lim),
      SchemaError);
  CHECK_THROWS_AS(
      instance_from_json(
          Json::parse(R"({"dimension": 9, "atoms": [{"id": "a",
                  "weight": "1",
                  "function": {"pieces": [{"a": ["1"], "b": "0"}]}}]})"),
          lim),
      LimitExceeded);
}

TEST_CASE("certificate json round trip") {
  DecompositionCertificate cert;
  cert.eps1 = frac(1, 2);
  cert.eps2 = 0;
  cert.alloc.budget = cert.eps1;
  cert.alloc.ell = {0, frac(1, 2)};
  cert.selections = {{Rational(1)}, {frac(-1, 2)}};
  cert.normal = {Rational(0)};
  const DecompositionCertificate back =
      certificate_from_json(certificate_to_json(cert), 1, 2);
  CHECK(back.eps1 == cert.eps1);
  CHECK(back.selections == cert.selections);
  CHECK(back.alloc.ell == cert.alloc.ell);
}

TEST_CASE("generated documents are deterministic and self-consistent") {
  const Json a = generate_instance_document(42, Profile::IndicatorHeavy);
  const Json b = generate_instance_document(42, Profile::IndicatorHeavy);
  CHECK(a.dump() == b.dump());
  const Json c = generate_instance_document(43, Profile::IndicatorHeavy);
  CHECK(a.dump() != c.dump());

  RunOptions opts;
  opts.json_format = true;
  std::ostringstream sink;
  for (const std::uint64_t seed : {1ull, 7ull}) {
    for (const Profile p :
         {Profile::BoxDomains, Profile::IndicatorHeavy, Profile::AffineOnly,
          Profile::Kinked, Profile::RestrictedSubspace}) {
      const Json doc = generate_instance_document(seed, p);
      const RunOutcome outcome = run_document(doc, opts, sink);
      CHECK(outcome.exit_code == 0);
    }
  }
}

TEST_CASE("runner reports failures with replayable counterexamples") {
  // A falsified certificate must be rejected through the verify path.
  Json doc;
  doc["instance"] = Json::parse(R"({"dimension": 1, "atoms": [
      {"id": "1", "weight": "1",
       "function": {"pieces": [{"a": ["1"], "b": "0"},
                                {"a": ["-1"], "b": "0"}]}}]})");
  doc["x"] = {"0"};
  doc["xstar"] = {"1/2"};
  doc["eps"] = "0";
  doc["certificate"] = {{"eps1", "0"},
                        {"eps2", "0"},
                        {"ell", {"0"}},
                        {"selections", {{"1"}}},
                        {"normal", {"0"}}};
  RunOptions opts;
  std::ostringstream sink;
  const RunOutcome bad = run_verify(doc, opts, sink);
  CHECK(bad.exit_code == 1);

  doc["certificate"]["selections"] = {{"1/2"}};
  const RunOutcome good = run_verify(doc, opts, sink);
  CHECK(good.exit_code == 0);
}

TEST_CASE("parallel runs keep deterministic report order") {
  const Json doc = generate_instance_document(5, Profile::BoxDomains);
  RunOptions serial;
  RunOptions parallel;
  parallel.jobs = 4;
  std::ostringstream a, b;
  const RunOutcome ra = run_document(doc, serial, a);
  const RunOutcome rb = run_document(doc, parallel, b);
  CHECK(ra.exit_code == 0);
  CHECK(rb.exit_code == 0);
  CHECK(a.str() == b.str());
}
