#include "pcity/symmetry.hpp"

#include <cmath>

namespace pcity {

namespace {

double ceil_tol(double x) { return std::ceil(x - 1e-9 * std::max(1.0, std::abs(x))); }

void require_feasible(const FrequencyPlan& plan, const RoutingFlow& flow, const CityInstance& city) {
  const auto report = check_alpp_feasible(plan, flow, city, 1e-6);
  if (!report.feasible) throw ValidationError("input is not ALPP-feasible: " + report.first_violation);
}

RoutingFlow average_flow(const RoutingFlow& flow, const CityInstance& city) {
  const int n = city.n();
  RoutingFlow out(flow.commodities, flow.arcs);
  for (int z = 0; z < n; ++z) {
    for (int c = 0; c < flow.commodities; ++c) {
      const int rc = rotate_commodity(n, c, z);
      for (int a = 0; a < flow.arcs; ++a) out(c, a) += flow(rc, city.rotate_arc(a, z));
    }
  }
  for (double& v : out.x) v /= n;
  return out;
}

}  // namespace

RoutingFlow rotate(const RoutingFlow& flow, const CityInstance& city, int z) {
  RoutingFlow out(flow.commodities, flow.arcs);
  for (int c = 0; c < flow.commodities; ++c) {
    const int rc = rotate_commodity(city.n(), c, z);
    for (int a = 0; a < flow.arcs; ++a) out(rc, city.rotate_arc(a, z)) = flow(c, a);
  }
  return out;
}

FrequencyPlan rotate(const FrequencyPlan& plan, const CityInstance& city, int z) {
  FrequencyPlan out;
  out.F.assign(plan.F.size(), 0);
  for (int a = 0; a < city.arc_count(); ++a) out[city.rotate_arc(a, z)] = plan[a];
  return out;
}

std::pair<FrequencyPlan, RoutingFlow> symmetrize(const FrequencyPlan& plan, const RoutingFlow& flow,
                                                 const CityInstance& city) {
  require_feasible(plan, flow, city);
  const int n = city.n();
  FrequencyPlan sym;
  sym.F.assign(plan.F.size(), 0);
  for (int block = 0; block < kArcBlocks; ++block) {
    std::int64_t sum = 0;
    for (int i = 0; i < n; ++i) sum += plan[block * n + i];
    const std::int64_t value = (sum + n - 1) / n;  // exact integer ceiling
    for (int i = 0; i < n; ++i) sym[block * n + i] = value;
  }
  return {std::move(sym), average_flow(flow, city)};
}

bool is_arc_symmetric(const FrequencyPlan& plan, const CityInstance& city) {
  for (int a = 0; a < city.arc_count(); ++a) {
    if (plan[a] != plan[city.rotate_arc(a, 1)]) return false;
  }
  return true;
}

std::optional<SymmetricFrequencies> symmetric_frequencies(const FrequencyPlan& plan, const CityInstance& city) {
  if (!is_arc_symmetric(plan, city)) return std::nullopt;
  const auto at = [&](ArcBlock b) { return plan[city.arc_id(b, 0)]; };
  if (at(ArcBlock::CentralOut) != at(ArcBlock::CentralIn)) return std::nullopt;
  if (at(ArcBlock::ToPeriphery) != at(ArcBlock::FromPeriphery)) return std::nullopt;
  return SymmetricFrequencies{at(ArcBlock::FromPeriphery), at(ArcBlock::CentralOut), at(ArcBlock::RingCcw),
                              at(ArcBlock::RingCw)};
}

bool is_flow_symmetric(const RoutingFlow& flow, const CityInstance& city, double tolerance) {
  for (int c = 0; c < flow.commodities; ++c) {
    const int rc = rotate_commodity(city.n(), c, 1);
    for (int a = 0; a < flow.arcs; ++a) {
      const double v = flow(c, a);
      const double w = flow(rc, city.rotate_arc(a, 1));
      if (std::abs(v - w) > tolerance * std::max(1.0, std::abs(v))) return false;
    }
  }
  return true;
}

RoutingFlow symmetric_flow_from_symmetric_plan(const FrequencyPlan& plan, const RoutingFlow& flow,
                                               const CityInstance& city) {
  if (!is_arc_symmetric(plan, city)) throw ValidationError("plan is not arc-symmetric");
  require_feasible(plan, flow, city);
  return average_flow(flow, city);
}

FrequencyPlan symmetric_plan_from_symmetric_flow(const RoutingFlow& flow, const FrequencyPlan& plan,
                                                 const CityInstance& city) {
  if (!is_flow_symmetric(flow, city, 1e-7)) throw ValidationError("flow is not rotation-invariant");
  require_feasible(plan, flow, city);
  const double K = city.params().K;
  const auto load = [&](ArcBlock b) { return flow.arc_total(city.arc_id(b, 0)); };
  SymmetricFrequencies sf;
  sf.F_P = plan[city.arc_id(ArcBlock::FromPeriphery, 0)];
  sf.F_Splus = static_cast<std::int64_t>(ceil_tol(load(ArcBlock::RingCcw) / K));
  sf.F_Sminus = static_cast<std::int64_t>(ceil_tol(load(ArcBlock::RingCw) / K));
  sf.F_C = static_cast<std::int64_t>(ceil_tol(load(ArcBlock::CentralIn) / K));
  // A symmetric flow sends the same total into CD as out of it, so the two
  // central orbits need the same frequency; guard against round-off anyway.
  sf.F_C = std::max(sf.F_C, static_cast<std::int64_t>(ceil_tol(load(ArcBlock::CentralOut) / K)));
  return expand(sf, city);
}

const char* to_string(GapClass c) {
  switch (c) {
    case GapClass::Symmetric: return "symmetric";
    case GapClass::Asymmetric: return "asymmetric";
    case GapClass::Infeasible: return "infeasible";
  }
  return "?";
}

GapReport symmetry_gap(const Solution& alpp, const Solution& alpps) {
  if (!alpp.instance.empty() && !alpps.instance.empty() && alpp.instance != alpps.instance) {
    throw ValidationError("symmetry gap of solutions for different instances");
  }
  const bool inf1 = alpp.status == SolveStatus::Infeasible;
  const bool inf2 = alpps.status == SolveStatus::Infeasible;
  GapReport report;
  if (inf1 && inf2) return report;
  if (inf1 != inf2) throw ValidationError("only one of ALPP / ALPP3_S is infeasible");
  if (alpp.status != SolveStatus::Optimal || alpps.status != SolveStatus::Optimal) {
    throw ValidationError(std::string("symmetry gap needs optimal solutions, got ") + to_string(alpp.status) + "/" +
                          to_string(alpps.status));
  }
  report.opt_alpp = alpp.objective;
  report.opt_alpps = alpps.objective;
  report.gamma_abs = alpps.objective - alpp.objective;
  report.gamma_rel = report.gamma_abs / std::max(std::abs(alpp.objective), 1e-12);
  report.classification =
      report.gamma_rel <= kClassificationTolerance ? GapClass::Symmetric : GapClass::Asymmetric;
  return report;
}

}  // namespace pcity
