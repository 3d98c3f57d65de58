#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "subint/errors.hpp"
#include "subint/examples.hpp"
#include "subint/generator.hpp"
#include "subint/runner.hpp"

using namespace subint;

namespace {

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("json parse error: ") + e.what());
  }
}

std::vector<double> parse_point(const std::string& csv, int dim) {
  std::vector<double> out;
  if (csv.empty()) return std::vector<double>(dim, 0.0);
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  if (static_cast<int>(out.size()) != dim)
    throw SchemaError("point has wrong dimension");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact eps-subdifferential calculus for finite convex integral "
      "functionals"};
  app.require_subcommand(1);

  RunOptions opts;
  std::string format = "json";
  bool override_limits = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--jobs", opts.jobs, "query-level worker count");
    cmd->add_option("--format", format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_flag("--timing", opts.timing, "include per-query timings");
    cmd->add_flag("--override-limits", override_limits,
                  "lift the desk-scale size guardrails");
    cmd->add_option("--eps-schedule", opts.eps_schedule,
                    "comma-separated budgets overriding br_run queries");
    cmd->add_option("--lambda-schedule", opts.lambda_schedule,
                    "comma-separated radii overriding br_run queries");
  };

  std::string check_path;
  auto* check = app.add_subcommand("check", "run the queries of an instance file");
  check->add_option("file", check_path, "instance json")->required();
  add_common(check);

  std::string verify_path;
  auto* verify = app.add_subcommand("verify", "verify a decomposition certificate");
  verify->add_option("file", verify_path, "certificate json")->required();
  add_common(verify);

  std::uint64_t seed = 1;
  std::string profile = "box-domains";
  auto* gen = app.add_subcommand("generate", "emit a deterministic instance file");
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--profile", profile,
                  "box-domains | indicator-heavy | affine-only | kinked | "
                  "restricted-subspace");

  auto* examples = app.add_subcommand("examples", "analytic example families");
  examples->require_subcommand(1);
  int l2_dim = 8;
  std::string l2_point;
  auto* l2 = examples->add_subcommand("l2", "squared-norm family");
  l2->add_option("--dim", l2_dim, "truncation dimension");
  l2->add_option("--point", l2_point, "comma-separated coordinates");
  int l1_nmax = 1000;
  auto* l1 = examples->add_subcommand("l1", "power family");
  l1->add_option("--nmax", l1_nmax, "largest atom index");
  add_common(l2);
  add_common(l1);

  CLI11_PARSE(app, argc, argv);
  opts.json_format = (format == "json");
  opts.limits.enforce = !override_limits;

  try {
    if (*check) {
      return run_document(load_json(check_path), opts, std::cout).exit_code;
    }
    if (*verify) {
      return run_verify(load_json(verify_path), opts, std::cout).exit_code;
    }
    if (*gen) {
      std::cout << generate_instance_document(seed,
                                              profile_from_name(profile))
                       .dump(2)
                << "\n";
      return 0;
    }
    if (*l2) {
      const L2Report rep = l2_example(l2_dim, parse_point(l2_point, l2_dim));
      Json j;
      j["query"] = "examples.l2";
      j["arithmetic"] = "float";
      j["status"] = rep.pass ? "pass" : "fail";
      j["value_direct"] = rep.value_direct;
      j["value_norm"] = rep.value_norm;
      j["gradient_error"] = rep.gradient_error;
      j["l1_surrogate"] = rep.l1_surrogate;
      j["divergence_surrogates"] =
          l2_divergence_surrogates({10, 100, 1000});
      if (opts.json_format)
        std::cout << j.dump(2) << "\n";
      else
        std::cout << "[" << j["status"].get<std::string>()
                  << "] examples.l2 value=" << rep.value_direct
                  << " grad_err=" << rep.gradient_error
                  << " surrogate=" << rep.l1_surrogate << "\n";
      return rep.pass ? 0 : 1;
    }
    if (*l1) {
      const L1Report rep = l1_example(l1_nmax);
      Json j;
      j["query"] = "examples.l1";
      j["arithmetic"] = "float";
      j["status"] = rep.pass ? "pass" : "fail";
      j["quotient_at_nmax"] = rep.at_n_max;
      j["max_abs_error"] = rep.max_abs_error;
      j["eventually_increasing"] = rep.eventually_increasing;
      Json traces = Json::array();
      for (const auto& t : rep.gateaux) {
        if (t.n > 5 && t.n != static_cast<int>(rep.gateaux.size())) continue;
        Json tr;
        tr["n"] = t.n;
        tr["final_quotient"] = t.quotients.back();
        tr["steps_used"] = t.steps.size();
        traces.push_back(std::move(tr));
      }
      j["gateaux_traces"] = std::move(traces);
      if (opts.json_format)
        std::cout << j.dump(2) << "\n";
      else
        std::cout << "[" << j["status"].get<std::string>()
                  << "] examples.l1 quotient(" << l1_nmax
                  << ")=" << rep.at_n_max << "\n";
      return rep.pass ? 0 : 1;
    }
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const LimitExceeded& e) {
    std::cerr << "limit error: " << e.what() << "\n";
    return 2;
  } catch (const SubintError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
