#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "subint/errors.hpp"
#include "subint/examples.hpp"
#include "subint/generator.hpp"
#include "subint/runner.hpp"
#include "subint/sequential.hpp"

namespace py = pybind11;
using namespace subint;

namespace {

// Rationals cross the boundary as strings so nothing is ever rounded.
QVec to_qvec(const std::vector<std::string>& xs) {
  QVec v;
  for (const auto& s : xs) {
    const auto q = parse_rational(s);
    if (!q) throw SchemaError("malformed rational '" + s + "'");
    v.push_back(*q);
  }
  return v;
}

Rational to_q(const std::string& s) {
  const auto q = parse_rational(s);
  if (!q) throw SchemaError("malformed rational '" + s + "'");
  return *q;
}

std::vector<std::string> from_qvec(const QVec& v) {
  std::vector<std::string> out;
  for (const auto& c : v) out.push_back(to_string(c));
  return out;
}

struct PyInstance {
  explicit PyInstance(IntegralInstance i) : inst(std::move(i)) {}
  IntegralInstance inst;
};

}  // namespace

PYBIND11_MODULE(_subint, m) {
  m.doc() =
      "Exact eps-subdifferential calculus for finite convex integral "
      "functionals; rationals are passed as strings, reports as json text";

  // Base first: translators run newest-first, so each derived type is
  // caught by its own translator before the base one.
  py::register_exception<SubintError>(m, "SubintError");
  py::register_exception<SchemaError>(m, "SchemaError");
  py::register_exception<NotInSubdifferential>(m, "NotInSubdifferentialError");
  py::register_exception<TheoremViolation>(m, "TheoremViolationError");
  py::register_exception<LimitExceeded>(m, "LimitExceededError");

  py::class_<PyInstance>(m, "Instance")
      .def_static(
          "from_json",
          [](const std::string& text, bool enforce_limits) {
            Limits lim;
            lim.enforce = enforce_limits;
            return PyInstance(
                instance_from_json(Json::parse(text), lim));
          },
          py::arg("text"), py::arg("enforce_limits") = true)
      .def_property_readonly(
          "dim", [](const PyInstance& s) { return s.inst.dim(); })
      .def_property_readonly(
          "num_atoms", [](const PyInstance& s) { return s.inst.num_atoms(); })
      .def("to_json",
           [](const PyInstance& s) {
             return instance_to_json(s.inst).dump();
           })
      .def("value",
           [](const PyInstance& s, const std::vector<std::string>& x) {
             return integral_value(s.inst, to_qvec(x)).str();
           })
      .def("conjugate_value",
           [](const PyInstance& s, const std::vector<std::string>& xstar) {
             return conjugate_value(s.inst.integral_function(),
                                    to_qvec(xstar))
                 .str();
           })
      .def("inf_convolution_value",
           [](const PyInstance& s, const std::vector<std::string>& xstar) {
             return inf_convolution_value(s.inst, to_qvec(xstar)).str();
           })
      .def("eps_subdifferential",
           [](const PyInstance& s, const std::vector<std::string>& x,
              const std::string& eps) {
             return polyhedron_to_json(
                        lhs_eps_subdifferential(s.inst, to_qvec(x),
                                                to_q(eps)))
                 .dump();
           })
      .def("eps_normal_dom",
           [](const PyInstance& s, const std::vector<std::string>& x,
              const std::string& eps) {
             return polyhedron_to_json(
                        eps_normal_dom(s.inst, to_qvec(x), to_q(eps)))
                 .dump();
           })
      .def("aumann_integral",
           [](const PyInstance& s, const std::vector<std::string>& x,
              const std::vector<std::string>& ell,
              const std::string& budget) {
             ErrorAllocation alloc{to_qvec(ell), to_q(budget)};
             return polyhedron_to_json(
                        aumann_integral(s.inst, to_qvec(x), alloc))
                 .dump();
           })
      .def("decompose",
           [](const PyInstance& s, const std::vector<std::string>& x,
              const std::vector<std::string>& xstar, const std::string& eps) {
             return certificate_to_json(
                        decompose(s.inst, to_qvec(x), to_qvec(xstar),
                                  to_q(eps)))
                 .dump();
           })
      .def("verify_certificate",
           [](const PyInstance& s, const std::vector<std::string>& x,
              const std::vector<std::string>& xstar, const std::string& eps,
              const std::string& cert_json) {
             return verify_certificate(
                 s.inst, to_qvec(x), to_qvec(xstar), to_q(eps),
                 certificate_from_json(Json::parse(cert_json), s.inst.dim(),
                                       s.inst.num_atoms()));
           })
      .def("check_sum_rule",
           [](const PyInstance& s, const std::vector<std::string>& x,
              const std::string& eps, std::uint64_t seed) {
             return report_to_json(
                        check_sum_rule(s.inst, to_qvec(x), to_q(eps), seed))
                 .dump();
           },
           py::arg("x"), py::arg("eps"), py::arg("seed") = 0x5eed)
      .def("normal_set_four_ways",
           [](const PyInstance& s, const std::vector<std::string>& x,
              const std::string& eps) {
             return report_to_json(
                        normal_set_four_ways(s.inst, to_qvec(x), to_q(eps)))
                 .dump();
           })
      .def("gateaux",
           [](const PyInstance& s, const std::vector<std::string>& x) {
             const GateauxReport g =
                 gateaux_correspondence(s.inst, to_qvec(x));
             Json j;
             j["integral_differentiable"] = g.integral_differentiable;
             j["atom_differentiable"] = g.atom_differentiable;
             j["equivalence_holds"] = g.equivalence_holds;
             j["gradient_additivity"] = g.gradient_additivity;
             return j.dump();
           })
      .def("br_run", [](const PyInstance& s,
                        const std::vector<std::string>& x,
                        const std::vector<std::string>& xstar,
                        const std::vector<std::string>& eps_schedule,
                        const std::vector<std::string>& lambda_schedule) {
        if (eps_schedule.size() != lambda_schedule.size())
          throw SchemaError("schedules must have equal length");
        std::vector<std::pair<Rational, Rational>> schedule;
        for (std::size_t i = 0; i < eps_schedule.size(); ++i)
          schedule.push_back(
              {to_q(eps_schedule[i]), to_q(lambda_schedule[i])});
        const ApproxRun run =
            br_decompose_run(s.inst, to_qvec(x), to_qvec(xstar), schedule);
        Json steps = Json::array();
        for (const auto& st : run.steps) {
          Json js;
          js["eps"] = to_string(st.eps);
          js["lambda"] = to_string(st.lambda);
          js["condition_c"] = to_string(st.condition_c);
          js["displacement"] = to_string(st.displacement);
          js["aggregate_gap"] = to_string(st.aggregate_gap);
          steps.push_back(std::move(js));
        }
        return steps.dump();
      });

  m.def("generate",
        [](std::uint64_t seed, const std::string& profile) {
          return generate_instance_document(seed, profile_from_name(profile))
              .dump(2);
        },
        py::arg("seed"), py::arg("profile") = "box-domains");

  m.def("l2_example", [](int dim, const std::vector<double>& point) {
    const L2Report rep = l2_example(dim, point);
    Json j;
    j["pass"] = rep.pass;
    j["value_direct"] = rep.value_direct;
    j["value_norm"] = rep.value_norm;
    j["gradient_error"] = rep.gradient_error;
    j["l1_surrogate"] = rep.l1_surrogate;
    return j.dump();
  });

  m.def("l1_example", [](int n_max) {
    const L1Report rep = l1_example(n_max);
    Json j;
    j["pass"] = rep.pass;
    j["at_n_max"] = rep.at_n_max;
    j["max_abs_error"] = rep.max_abs_error;
    return j.dump();
  });
}
