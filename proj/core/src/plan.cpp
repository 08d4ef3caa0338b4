#include "pcity/plan.hpp"

#include <cmath>
#include <limits>

namespace pcity {

double RoutingFlow::arc_total(int a) const {
  double sum = 0;
  for (int c = 0; c < commodities; ++c) sum += (*this)(c, a);
  return sum;
}

FrequencyPlan expand(const SymmetricFrequencies& sf, const CityInstance& city) {
  FrequencyPlan plan;
  plan.F.assign(static_cast<std::size_t>(city.arc_count()), 0);
  for (int a = 0; a < city.arc_count(); ++a) {
    switch (city.arc_block(a)) {
      case ArcBlock::CentralOut:
      case ArcBlock::CentralIn: plan[a] = sf.F_C; break;
      case ArcBlock::RingCcw: plan[a] = sf.F_Splus; break;
      case ArcBlock::RingCw: plan[a] = sf.F_Sminus; break;
      case ArcBlock::ToPeriphery:
      case ArcBlock::FromPeriphery: plan[a] = sf.F_P; break;
    }
  }
  return plan;
}

double operator_cost(const FrequencyPlan& plan, const CityInstance& city) {
  double sum = 0;
  for (int a = 0; a < city.arc_count(); ++a) sum += city.arc(a).length * static_cast<double>(plan[a]);
  return city.params().mu * sum;
}

double passenger_distance(const RoutingFlow& flow, const CityInstance& city) {
  double sum = 0;
  for (int a = 0; a < city.arc_count(); ++a) sum += city.arc(a).length * flow.arc_total(a);
  return sum;
}

double user_cost(const RoutingFlow& flow, const CityInstance& city) {
  return (1.0 - city.params().mu) * passenger_distance(flow, city);
}

double total_cost(const FrequencyPlan& plan, const RoutingFlow& flow, const CityInstance& city) {
  return operator_cost(plan, city) + user_cost(flow, city);
}

bool is_circulation(const FrequencyPlan& plan, const CityInstance& city) {
  if (static_cast<int>(plan.F.size()) != city.arc_count()) return false;
  for (int v = 0; v < city.node_count(); ++v) {
    std::int64_t balance = 0;
    for (int a : city.out_arcs(v)) balance += plan[a];
    for (int a : city.in_arcs(v)) balance -= plan[a];
    if (balance != 0) return false;
  }
  return true;
}

FeasibilityReport check_alpp_feasible(const FrequencyPlan& plan, const RoutingFlow& flow, const CityInstance& city,
                                      double tolerance) {
  FeasibilityReport report;
  auto note = [&](double violation, const std::string& what) {
    if (violation > report.max_violation) report.max_violation = violation;
    if (violation > tolerance && report.feasible) {
      report.feasible = false;
      report.first_violation = what;
    }
  };

  const int n = city.n();
  if (static_cast<int>(plan.F.size()) != city.arc_count() || flow.arcs != city.arc_count() ||
      flow.commodities != 2 * n) {
    report.feasible = false;
    report.max_violation = std::numeric_limits<double>::infinity();
    report.first_violation = "dimension mismatch";
    return report;
  }

  const double lambda = city.params().effective_lambda();
  const double K = city.params().K;
  for (int a = 0; a < city.arc_count(); ++a) {
    const std::string label = to_string(city.arc(a).tail) + "->" + to_string(city.arc(a).head);
    note(-static_cast<double>(plan[a]), "F negative on " + label);
    note(static_cast<double>(plan[a]) - lambda, "F above Lambda on " + label);
    note(flow.arc_total(a) - K * static_cast<double>(plan[a]), "capacity on " + label);
  }
  for (int v = 0; v < city.node_count(); ++v) {
    double balance = 0;
    for (int a : city.out_arcs(v)) balance += static_cast<double>(plan[a]);
    for (int a : city.in_arcs(v)) balance -= static_cast<double>(plan[a]);
    note(std::abs(balance), "circulation at " + to_string(city.node(v)));
  }

  const auto& d = city.demand();
  for (int c = 0; c < flow.commodities; ++c) {
    const int origin = c < n ? city.node_id(Node::p(c)) : city.node_id(Node::sc(c - n));
    for (int a = 0; a < city.arc_count(); ++a) note(-flow(c, a), "negative flow");
    for (int v = 0; v < city.node_count(); ++v) {
      double balance = 0;
      for (int a : city.out_arcs(v)) balance += flow(c, a);
      for (int a : city.in_arcs(v)) balance -= flow(c, a);
      const double rhs = v == origin ? d.supply(origin) : -d(origin, v);
      note(std::abs(balance - rhs),
           "conservation of commodity " + to_string(city.node(origin)) + " at " + to_string(city.node(v)));
    }
  }
  return report;
}

}  // namespace pcity
