#include "subint/runner.hpp"

#include <chrono>
#include <future>
#include <sstream>
#include <ostream>

#include "subint/errors.hpp"
#include "subint/examples.hpp"
#include "subint/sequential.hpp"

namespace subint {

namespace {

Json rational_list_to_json(const std::string& csv) {
  Json arr = Json::array();
  std::string item;
  std::stringstream ss(csv);
  while (std::getline(ss, item, ',')) {
    if (!parse_rational(item))
      throw SchemaError("malformed rational '" + item + "' in schedule");
    arr.push_back(item);
  }
  return arr;
}

std::vector<std::pair<Rational, Rational>> schedule_from(const Json& q) {
  if (!q.contains("eps_schedule") || !q.contains("lambda_schedule"))
    throw SchemaError("br_run needs eps_schedule and lambda_schedule");
  const Json& es = q.at("eps_schedule");
  const Json& ls = q.at("lambda_schedule");
  if (!es.is_array() || !ls.is_array() || es.size() != ls.size() ||
      es.empty())
    throw SchemaError("schedules must be equal-length nonempty arrays");
  std::vector<std::pair<Rational, Rational>> schedule;
  for (std::size_t i = 0; i < es.size(); ++i)
    schedule.push_back(
        {rational_from_json(es[i]), rational_from_json(ls[i])});
  return schedule;
}

Json run_one_query(const IntegralInstance& inst, const Json& q) {
  if (!q.is_object() || !q.contains("type"))
    throw SchemaError("query needs a type");
  const std::string type = q.at("type").get<std::string>();
  Json out;
  out["query"] = type;
  out["arithmetic"] = "exact";

  if (type == "sum_rule") {
    const QVec x = qvec_from_json(q.at("x"));
    const Rational eps = rational_from_json(q.at("eps"));
    const std::uint64_t seed =
        q.contains("seed") ? q.at("seed").get<std::uint64_t>() : 0x5eed;
    const CheckReport rep = check_sum_rule(inst, x, eps, seed);
    out.update(report_to_json(rep));
  } else if (type == "conjugate") {
    std::vector<QVec> points;
    if (q.contains("points"))
      for (const auto& p : q.at("points")) points.push_back(qvec_from_json(p));
    if (q.contains("num_random")) {
      SplitMix rng(q.contains("seed") ? q.at("seed").get<std::uint64_t>()
                                      : 0x5eed);
      for (int i = 0; i < q.at("num_random").get<int>(); ++i)
        points.push_back(rng.vec(inst.dim(), -4, 4, 8));
    }
    if (points.empty()) throw SchemaError("conjugate query has no points");
    CheckReport rep;
    rep.theorem = "conjugate infimal-convolution formula";
    rep.notes.push_back(
        "the closure in the conjugate formula is superfluous over "
        "polyhedral data in finite dimension");
    for (const auto& s : points) {
      const ExtRat lhs = inf_convolution_value(inst, s);
      const ExtRat rhs = conjugate_value(inst.integral_function(), s);
      if (!(lhs == rhs)) {
        rep.pass = false;
        rep.counterexample = "at " + to_string(s) + ": " + lhs.str() +
                             " vs " + rhs.str();
        break;
      }
    }
    if (rep.pass)
      rep.witnesses.push_back(std::to_string(points.size()) +
                              " dual points matched exactly");
    out.update(report_to_json(rep));
  } else if (type == "epigraph") {
    CheckReport rep;
    rep.theorem = "conjugate epigraph as a weighted Minkowski sum";
    const EpigraphSumSet sets = build_epigraph_sets(inst);
    const Polyhedron direct =
        conjugate_function(inst.integral_function()).epigraph();
    QVec up = zero_vec(inst.dim() + 1);
    up[inst.dim()] = 1;
    const Polyhedron vertical = Polyhedron::from_generators(
        inst.dim() + 1, {zero_vec(inst.dim() + 1)}, {up});
    if (!equals(sets.E, direct)) {
      rep.pass = false;
      rep.counterexample = "E differs from the directly-built epigraph";
    } else if (!equals(sets.E, minkowski_sum(sets.G, vertical))) {
      rep.pass = false;
      rep.counterexample = "E differs from G + vertical halfline";
    } else {
      rep.witnesses.push_back("E = epi (I_f)* and E = G + {0} x R+");
    }
    out.update(report_to_json(rep));
  } else if (type == "normal_sets") {
    const QVec x = qvec_from_json(q.at("x"));
    const Rational eps = rational_from_json(q.at("eps"));
    out.update(report_to_json(normal_set_four_ways(inst, x, eps)));
  } else if (type == "restricted") {
    const QVec x = qvec_from_json(q.at("x"));
    const Rational eps = rational_from_json(q.at("eps"));
    std::vector<QVec> basis;
    for (const auto& b : q.at("L")) basis.push_back(qvec_from_json(b));
    const SubspaceRestriction L = make_subspace(inst.dim(), basis);
    out.update(report_to_json(check_restricted_formula(inst, L, x, eps)));
  } else if (type == "br_run") {
    const QVec x = qvec_from_json(q.at("x"));
    const QVec xstar = qvec_from_json(q.at("xstar"));
    const ApproxRun run =
        br_decompose_run(inst, x, xstar, schedule_from(q));
    CheckReport rep;
    rep.theorem = "sequential exact-subgradient approximation";
    rep.notes.push_back(
        "max-norm displacement and 1-norm dual shift; the regularized "
        "minimization replaces the variational argument, which is exact "
        "for polyhedral data");
    Json steps = Json::array();
    for (const auto& s : run.steps) {
      if (s.condition_c > 2 * s.eps || s.displacement > s.lambda) {
        rep.pass = false;
        rep.counterexample = "step bound violated at eps=" + to_string(s.eps);
      }
      Json js;
      js["eps"] = rational_to_json(s.eps);
      js["lambda"] = rational_to_json(s.lambda);
      js["target"] = qvec_to_json(s.target);
      js["normal"] = qvec_to_json(s.normal);
      js["condition_c"] = rational_to_json(s.condition_c);
      js["displacement"] = rational_to_json(s.displacement);
      js["aggregate_gap"] = rational_to_json(s.aggregate_gap);
      steps.push_back(std::move(js));
    }
    out["steps"] = std::move(steps);
    if (rep.pass)
      rep.witnesses.push_back(std::to_string(run.steps.size()) +
                              " steps within the per-step bounds");
    out.update(report_to_json(rep));
  } else if (type == "gateaux") {
    const QVec x = qvec_from_json(q.at("x"));
    const GateauxReport g = gateaux_correspondence(inst, x);
    CheckReport rep;
    rep.theorem = "differentiability correspondence";
    rep.pass = g.equivalence_holds && g.gradient_additivity;
    if (!rep.pass) rep.counterexample = g.detail;
    rep.witnesses.push_back(g.detail);
    out.update(report_to_json(rep));
  } else {
    throw SchemaError("unknown query type '" + type + "'");
  }
  return out;
}

}  // namespace

void render_text(const Json& reports, std::ostream& out) {
  for (const auto& r : reports) {
    out << "[" << r.value("status", "?") << "] "
        << r.value("query", r.value("theorem", "?"));
    if (r.contains("theorem") && r.contains("query"))
      out << ": " << r["theorem"].get<std::string>();
    if (r.contains("timing_ms"))
      out << " (" << r["timing_ms"].get<double>() << " ms)";
    out << "\n";
    if (r.contains("witnesses"))
      for (const auto& w : r["witnesses"])
        out << "    witness: " << w.get<std::string>() << "\n";
    if (r.contains("counterexample") && !r["counterexample"].is_null())
      out << "    counterexample: " << r["counterexample"] << "\n";
    if (r.contains("notes"))
      for (const auto& n : r["notes"])
        out << "    note: " << n.get<std::string>() << "\n";
  }
}

RunOutcome run_document(const Json& doc, const RunOptions& opts,
                        std::ostream& out) {
  RunOutcome outcome;
  const IntegralInstance inst = instance_from_json(doc, opts.limits);
  const Json queries = doc.value("queries", Json::array());

  auto run_at = [&](std::size_t i) -> Json {
    const auto t0 = std::chrono::steady_clock::now();
    Json rep;
    try {
      Json q = queries[i];
      if (q.value("type", "") == "br_run" && !opts.eps_schedule.empty() &&
          !opts.lambda_schedule.empty()) {
        q["eps_schedule"] = rational_list_to_json(opts.eps_schedule);
        q["lambda_schedule"] = rational_list_to_json(opts.lambda_schedule);
      }
      rep = run_one_query(inst, q);
    } catch (const SchemaError&) {
      throw;  // malformed query: the whole run is a schema failure
    } catch (const SubintError& e) {
      rep["query"] = queries[i].value("type", "?");
      rep["status"] = "error";
      rep["counterexample"] = e.what();
    }
    if (opts.timing) {
      const auto dt = std::chrono::duration<double, std::milli>(
          std::chrono::steady_clock::now() - t0);
      rep["timing_ms"] = dt.count();
    }
    return rep;
  };

  if (opts.jobs > 1 && queries.size() > 1) {
    std::vector<std::future<Json>> futures;
    for (std::size_t i = 0; i < queries.size(); ++i)
      futures.push_back(
          std::async(std::launch::async, [&, i] { return run_at(i); }));
    for (auto& f : futures) outcome.reports.push_back(f.get());
  } else {
    for (std::size_t i = 0; i < queries.size(); ++i)
      outcome.reports.push_back(run_at(i));
  }

  for (const auto& r : outcome.reports)
    if (r.value("status", "error") != "pass") outcome.exit_code = 1;

  if (opts.json_format)
    out << outcome.reports.dump(2) << "\n";
  else
    render_text(outcome.reports, out);
  return outcome;
}

RunOutcome run_verify(const Json& doc, const RunOptions& opts,
                      std::ostream& out) {
  RunOutcome outcome;
  if (!doc.contains("instance") || !doc.contains("x") ||
      !doc.contains("xstar") || !doc.contains("eps") ||
      !doc.contains("certificate"))
    throw SchemaError(
        "verify needs instance, x, xstar, eps and certificate");
  const IntegralInstance inst =
      instance_from_json(doc.at("instance"), opts.limits);
  const QVec x = qvec_from_json(doc.at("x"));
  const QVec xstar = qvec_from_json(doc.at("xstar"));
  const Rational eps = rational_from_json(doc.at("eps"));
  const DecompositionCertificate cert = certificate_from_json(
      doc.at("certificate"), inst.dim(), inst.num_atoms());
  const bool ok = verify_certificate(inst, x, xstar, eps, cert);
  Json rep;
  rep["query"] = "verify";
  rep["theorem"] = "decomposition certificate validity";
  rep["status"] = ok ? "pass" : "fail";
  rep["witnesses"] = Json::array();
  rep["counterexample"] =
      ok ? Json(nullptr) : Json("certificate invariants do not hold");
  outcome.reports.push_back(std::move(rep));
  outcome.exit_code = ok ? 0 : 1;
  if (opts.json_format)
    out << outcome.reports.dump(2) << "\n";
  else
    render_text(outcome.reports, out);
  return outcome;
}

}  // namespace subint
