#include "pcity/solver.hpp"

#include <chrono>
#include <cmath>

namespace pcity {

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::Unbounded: return "Unbounded";
    case SolveStatus::GapLimit: return "GapLimit";
    case SolveStatus::Error: return "Error";
  }
  return "Error";
}

Solution solve_lp(const MilpModel& model, const lp::SimplexOptions& options) {
  Solution out;
  const auto start = std::chrono::steady_clock::now();
  if (model.structurally_infeasible) {
    out.status = SolveStatus::Infeasible;
    out.message = model.infeasibility_reason;
    return out;
  }
  lp::LpInstance lp = lp::make_lp(model, options);
  const lp::LpStatus status = lp.simplex.solve();
  out.stats.lp_iterations = lp.simplex.iterations();
  out.stats.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  switch (status) {
    case lp::LpStatus::Optimal: break;
    case lp::LpStatus::Infeasible: out.status = SolveStatus::Infeasible; return out;
    case lp::LpStatus::Unbounded: out.status = SolveStatus::Unbounded; return out;
    default:
      out.status = SolveStatus::Error;
      out.message = std::string("LP failure: ") + lp::to_string(status) + " " + lp.simplex.message();
      return out;
  }
  out.values = lp.model_values();
  std::string where;
  const double viol = max_violation(model, out.values, false, &where);
  if (viol > 1e-7) {
    out.status = SolveStatus::Error;
    out.message = "LP solution violates " + where + " by " + std::to_string(viol);
    out.values.clear();
    return out;
  }
  out.status = SolveStatus::Optimal;
  out.objective = model.objective(out.values);
  out.bound = out.objective;
  out.gap = 0.0;
  return out;
}

double max_violation(const MilpModel& model, const std::vector<double>& values, bool check_integrality,
                     std::string* where) {
  double worst = 0.0;
  auto note = [&](double v, const std::string& name) {
    if (v > worst) {
      worst = v;
      if (where) *where = name;
    }
  };
  if (values.size() != model.variables.size()) {
    if (where) *where = "dimension";
    return kInfinity;
  }
  for (std::size_t j = 0; j < values.size(); ++j) {
    const auto& v = model.variables[j];
    note(v.lower - values[j], v.name);
    note(values[j] - v.upper, v.name);
    if (check_integrality && v.integer) note(std::abs(values[j] - std::round(values[j])), v.name);
  }
  for (const auto& row : model.constraints) {
    const double act = row.activity(values);
    note(row.lower - act, row.name);
    note(act - row.upper, row.name);
  }
  return worst;
}

namespace {

std::int64_t to_integer(double v, const std::string& name) {
  const double r = std::round(v);
  if (std::abs(v - r) > 1e-6) throw ValidationError("frequency " + name + " is not integral: " + std::to_string(v));
  return static_cast<std::int64_t>(r);
}

void require_values(const Solution& solution) {
  if (!solution.has_values() ||
      (solution.status != SolveStatus::Optimal && solution.status != SolveStatus::GapLimit)) {
    throw ValidationError(std::string("solution has no values (status ") + to_string(solution.status) + ")");
  }
}

}  // namespace

FrequencyPlan extract_frequency_plan(const Solution& solution, const MilpModel& model, const CityInstance& city) {
  require_values(solution);
  if (model.kind == ModelKind::AlppSym) {
    SymmetricFrequencies sf;
    sf.F_P = model.fixed_peripheral_frequency;
    sf.F_C = to_integer(solution.values[static_cast<std::size_t>(model.frequency_vars[0])], "F_C");
    sf.F_Splus = to_integer(solution.values[static_cast<std::size_t>(model.frequency_vars[1])], "F_Splus");
    sf.F_Sminus = to_integer(solution.values[static_cast<std::size_t>(model.frequency_vars[2])], "F_Sminus");
    return expand(sf, city);
  }
  if (model.kind != ModelKind::Alpp) throw ValidationError("model has no frequency structure");
  FrequencyPlan plan;
  for (int var : model.frequency_vars) {
    plan.F.push_back(to_integer(solution.values[static_cast<std::size_t>(var)],
                                model.variables[static_cast<std::size_t>(var)].name));
  }
  return plan;
}

RoutingFlow extract_routing_flow(const Solution& solution, const MilpModel& model) {
  require_values(solution);
  RoutingFlow flow(model.commodity_count(), model.arc_count);
  for (int c = 0; c < model.commodity_count(); ++c) {
    for (int a = 0; a < model.arc_count; ++a) {
      flow(c, a) = solution.values[static_cast<std::size_t>(model.flow(c, a))];
    }
  }
  return flow;
}

std::vector<double> assemble_values(const MilpModel& model, const CityInstance& city, const FrequencyPlan& plan,
                                    const RoutingFlow& flow) {
  std::vector<double> values(model.variables.size(), 0.0);
  if (model.kind == ModelKind::Alpp) {
    for (int a = 0; a < model.arc_count; ++a) {
      values[static_cast<std::size_t>(model.frequency_vars[static_cast<std::size_t>(a)])] =
          static_cast<double>(plan[a]);
    }
  } else if (model.kind == ModelKind::AlppSym) {
    values[static_cast<std::size_t>(model.frequency_vars[0])] =
        static_cast<double>(plan[city.arc_id(ArcBlock::CentralOut, 0)]);
    values[static_cast<std::size_t>(model.frequency_vars[1])] =
        static_cast<double>(plan[city.arc_id(ArcBlock::RingCcw, 0)]);
    values[static_cast<std::size_t>(model.frequency_vars[2])] =
        static_cast<double>(plan[city.arc_id(ArcBlock::RingCw, 0)]);
  } else {
    throw ValidationError("model has no frequency structure");
  }
  for (int c = 0; c < model.commodity_count(); ++c) {
    for (int a = 0; a < model.arc_count; ++a) values[static_cast<std::size_t>(model.flow(c, a))] = flow(c, a);
  }
  return values;
}

}  // namespace pcity
