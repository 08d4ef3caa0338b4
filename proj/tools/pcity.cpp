// pcity: single solves, (alpha, gamma) sweeps, bound reports, gap checks and
// the symmetric line-planning approximation for the Parametric City.
//
// exit codes: 0 optimal, 2 infeasible, 1 anything else.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pcity/analysis.hpp"
#include "pcity/bounds.hpp"
#include "pcity/config.hpp"
#include "pcity/external_backend.hpp"
#include "pcity/lines.hpp"
#include "pcity/sweep.hpp"
#include "pcity/symmetry.hpp"

using namespace pcity;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

struct Args {
  std::string config;
  std::string model = "alpp";
  std::string out;
  std::string format;
  double step = 0.1;
  int jobs = 1;
  double gap_tol = 1e-4;
  double min_beta = 0.0;
  std::uint64_t seed = 0;
  std::vector<double> fielbaum;  // c0 pv
  double time_limit = 3600.0;
  bool lines = false;
  bool external = false;
  bool quiet = false;
};

// Writes to --out if given, else stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot write '" + path + "'");
    }
  }
  std::ostream& os() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

CityParams load(const Args& a) {
  if (a.config.empty()) throw ValidationError("--config is required");
  CityParams p = load_config(a.config);
  if (a.fielbaum.size() == 2) p.mu = fielbaum_mu(a.fielbaum[0], a.fielbaum[1]);
  p.validate();
  return p;
}

MilpOptions milp_options(const Args& a) {
  MilpOptions o;
  o.gap_tol = a.gap_tol;
  o.time_limit_s = a.time_limit;
  return o;
}

int exit_code(SolveStatus s) {
  if (s == SolveStatus::Optimal) return kExitOk;
  if (s == SolveStatus::Infeasible) return kExitInfeasible;
  return kExitError;
}

std::string arc_name(const CityInstance& city, int a) {
  return to_string(city.arc(a).tail) + "->" + to_string(city.arc(a).head);
}

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

int cmd_solve(const Args& a) {
  const CityParams p = load(a);
  const CityInstance city = build_city(p);
  Output out(a.out);
  json j;
  j["model"] = a.model;

  if (a.model == "umcfp") {
    const double opt = shortest_path_oracle(city);
    j["status"] = "Optimal";
    j["objective"] = opt;
    j["lambda"] = lambda_value(p);
    j["TYlambda"] = p.T * p.Y * lambda_value(p);
    if (a.format == "csv") {
      out.os() << "model,status,objective\numcfp,Optimal," << opt << "\n";
    } else {
      out.os() << j.dump(2) << "\n";
    }
    return kExitOk;
  }

  const MilpModel model = a.model == "alpps" ? build_alpp_sym(city) : build_alpp(city);
  Solution sol;
  if (a.external) {
    const auto cmd = external_solver_command();
    if (!cmd) throw ValidationError(std::string("--external needs ") + kExternalSolverEnv);
    sol = solve_external(model, *cmd);
  } else if (a.model == "alpps") {
    sol = solve_alpp_sym(city, milp_options(a));
  } else {
    sol = solve_alpp(city, milp_options(a));
  }

  j["status"] = to_string(sol.status);
  if (!sol.message.empty()) j["message"] = sol.message;
  j["objective"] = num(sol.objective);
  j["bound"] = num(sol.bound);
  j["gap"] = num(sol.gap);
  j["nodes"] = sol.stats.nodes;
  j["ms"] = sol.stats.wall_ms;

  std::optional<FrequencyPlan> plan;
  if (sol.has_values()) {
    plan = extract_frequency_plan(sol, model, city);
    const RoutingFlow flow = extract_routing_flow(sol, model);
    j["operator_cost"] = operator_cost(*plan, city);
    j["user_cost"] = user_cost(flow, city);
    json freq = json::object();
    for (int arc = 0; arc < city.arc_count(); ++arc) freq[arc_name(city, arc)] = (*plan)[arc];
    j["frequencies"] = std::move(freq);
    if (auto sf = symmetric_frequencies(*plan, city)) {
      j["symmetric"] = {{"F_P", sf->F_P}, {"F_C", sf->F_C}, {"F_Splus", sf->F_Splus}, {"F_Sminus", sf->F_Sminus}};
    }
    if (a.lines) j["lines"] = json::parse(to_json(decompose_circulation(*plan, city), city));
  }

  if (a.format == "csv") {
    out.os() << "arc,tail,head,frequency\n";
    if (plan) {
      for (int arc = 0; arc < city.arc_count(); ++arc) {
        out.os() << arc << ',' << to_string(city.arc(arc).tail) << ',' << to_string(city.arc(arc).head) << ','
                 << (*plan)[arc] << "\n";
      }
    }
    out.os() << "# status " << to_string(sol.status) << "\n# objective " << sol.objective << "\n";
  } else {
    out.os() << j.dump(2) << "\n";
  }
  if (sol.status == SolveStatus::GapLimit) std::cerr << "pcity: stopped at a limit before proving optimality\n";
  return exit_code(sol.status);
}

int cmd_sweep(const Args& a) {
  SweepSpec spec;
  spec.base = load(a);
  spec.step = a.step;
  spec.min_beta = a.min_beta;
  spec.jobs = a.jobs;
  spec.options = milp_options(a);
  const bool quiet = a.quiet;
  auto progress = [quiet](std::size_t done, std::size_t total, const SweepRow& r) {
    if (quiet) return;
    std::fprintf(stderr, "[%zu/%zu] alpha=%g gamma=%g %s %.0f ms\n", done, total, r.alpha, r.gamma,
                 r.classification.c_str(), r.ms_alpp + r.ms_alpps);
  };
  const auto rows = run_sweep(spec, progress);
  Output out(a.out);
  if (a.format == "json") write_sweep_json(rows, spec, out.os());
  else write_sweep_csv(rows, spec, out.os());
  const SweepSummary s = summarize(rows);
  std::fprintf(stderr, "rows %d, asymmetric %.2f%%, max gap %.4f%%, errors %d\n", s.rows, s.asymmetric_share,
               s.max_gamma_rel, s.errors);
  return s.errors == 0 ? kExitOk : kExitError;
}

int cmd_bounds(const Args& a) {
  const CityParams p = load(a);
  const BoundSet b = gap_bounds(p);
  Output out(a.out);
  if (a.format == "json") out.os() << format_bounds_json(b) << "\n";
  else out.os() << format_bounds_text(b);
  if (!(b.lambda_lo <= b.lambda_val + 1e-12 && b.lambda_val <= b.lambda_hi + 1e-12)) {
    std::cerr << "pcity: lambda sandwich violated\n";
    return kExitError;
  }
  return kExitOk;
}

int cmd_gap(const Args& a) {
  const CityParams p = load(a);
  SweepRow row = sweep_row(p, milp_options(a));
  if (!row.error.empty()) throw std::runtime_error(row.error);
  Output out(a.out);
  if (a.format == "csv") {
    write_sweep_csv({row}, SweepSpec{}, out.os());
  } else {
    json j;
    j["opt_alpp"] = num(row.opt_alpp);
    j["opt_alpps"] = num(row.opt_alpps);
    j["gamma_abs"] = num(row.gamma_abs);
    j["gamma_rel"] = num(row.gamma_rel);
    j["classification"] = row.classification;
    j["bound_cn_ag"] = row.bound_cn_ag;
    j["abs_gap_bound"] = gap_bounds(p).abs_gap_bound;
    j["ms_alpp"] = row.ms_alpp;
    j["ms_alpps"] = row.ms_alpps;
    out.os() << j.dump(2) << "\n";
  }
  return row.classification == "infeasible" ? kExitInfeasible : kExitOk;
}

int cmd_lpa(const Args& a) {
  const CityParams p = load(a);
  const CityInstance city = build_city(p);
  const LpaResult r = lpa(p, milp_options(a));
  Output out(a.out);
  if (r.status != SolveStatus::Optimal) {
    json j{{"status", to_string(r.status)}, {"message", r.message}};
    out.os() << j.dump(2) << "\n";
    return exit_code(r.status);
  }
  if (a.format == "csv") {
    out.os() << "line,frequency,length\n";
    for (const auto& e : r.plan.entries) {
      std::string nodes;
      for (const Node& v : e.line.nodes) nodes += (nodes.empty() ? "" : " ") + to_string(v);
      out.os() << nodes << ',' << e.frequency << ',' << line_length(e.line, city) << "\n";
    }
  } else {
    json j;
    j["status"] = to_string(r.status);
    j["cost"] = r.cost;
    j["frequencies"] = {{"F_P", r.frequencies.F_P},
                        {"F_C", r.frequencies.F_C},
                        {"F_Splus", r.frequencies.F_Splus},
                        {"F_Sminus", r.frequencies.F_Sminus}};
    j["lines"] = json::parse(to_json(r.plan, city));
    out.os() << j.dump(2) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Line planning in the Parametric City"};
  app.require_subcommand(1);
  Args a;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", a.config, "flat key-value city file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", a.out, "output file (default stdout)");
    sub->add_option("--gap-tol", a.gap_tol, "relative MIP gap")->capture_default_str()->check(CLI::NonNegativeNumber);
    sub->add_option("--time-limit", a.time_limit, "seconds per MILP")->capture_default_str();
    sub->add_option("--fielbaum", a.fielbaum, "C0 PV: set mu = C0 / (C0 + PV)")->expected(2);
    sub->add_option("--seed", a.seed, "seed for randomized drivers (unused by deterministic commands)");
  };

  auto* solve = app.add_subcommand("solve", "solve one model");
  common(solve);
  solve->add_option("--model", a.model)->check(CLI::IsMember({"alpp", "alpps", "umcfp"}))->capture_default_str();
  solve->add_option("--format", a.format)->check(CLI::IsMember({"csv", "json"}));
  solve->add_flag("--lines", a.lines, "add a line decomposition of the frequencies");
  solve->add_flag("--external", a.external, std::string("use the solver command in ") + kExternalSolverEnv);

  auto* sweep = app.add_subcommand("sweep", "(alpha, gamma) grid with symmetry-gap classification");
  common(sweep);
  sweep->add_option("--step", a.step)->capture_default_str()->check(CLI::PositiveNumber);
  sweep->add_option("--jobs", a.jobs)->capture_default_str()->check(CLI::PositiveNumber);
  sweep->add_option("--min-beta", a.min_beta, "skip points with beta <= this (default: keep beta > 0)");
  sweep->add_option("--format", a.format)->check(CLI::IsMember({"csv", "json"}));
  sweep->add_flag("--quiet", a.quiet, "no progress on stderr");

  auto* bounds = app.add_subcommand("bounds", "theoretical bounds");
  common(bounds);
  bounds->add_option("--format", a.format, "text (default) or json")->check(CLI::IsMember({"text", "json"}));

  auto* gap = app.add_subcommand("gap", "symmetry gap of one instance");
  common(gap);
  gap->add_option("--format", a.format)->check(CLI::IsMember({"csv", "json"}));

  auto* lpa_cmd = app.add_subcommand("lpa", "symmetric line plan");
  common(lpa_cmd);
  lpa_cmd->add_option("--format", a.format)->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitError;
  }

  try {
    if (*solve) return cmd_solve(a);
    if (*sweep) return cmd_sweep(a);
    if (*bounds) return cmd_bounds(a);
    if (*gap) return cmd_gap(a);
    if (*lpa_cmd) return cmd_lpa(a);
  } catch (const std::exception& e) {
    std::cerr << "pcity: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
