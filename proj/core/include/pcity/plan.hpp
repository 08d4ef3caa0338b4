#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcity/city.hpp"

namespace pcity {

/// Integer frequency per arc id.
struct FrequencyPlan {
  std::vector<std::int64_t> F;

  std::int64_t operator[](int arc) const { return F[static_cast<std::size_t>(arc)]; }
  std::int64_t& operator[](int arc) { return F[static_cast<std::size_t>(arc)]; }
  bool operator==(const FrequencyPlan&) const = default;
};

/// Passenger flow per (origin commodity, arc); commodity c < n starts at P_c,
/// commodity n + i at SC_i.
struct RoutingFlow {
  int commodities = 0;
  int arcs = 0;
  std::vector<double> x;

  RoutingFlow() = default;
  RoutingFlow(int commodity_count, int arc_count)
      : commodities(commodity_count), arcs(arc_count), x(static_cast<std::size_t>(commodity_count) * arc_count, 0.0) {}

  double operator()(int c, int a) const { return x[static_cast<std::size_t>(c) * arcs + a]; }
  double& operator()(int c, int a) { return x[static_cast<std::size_t>(c) * arcs + a]; }
  /// Total passenger flow on an arc.
  double arc_total(int a) const;
};

/// The four orbit frequencies of an arc-symmetric plan.
struct SymmetricFrequencies {
  std::int64_t F_P = 0;
  std::int64_t F_C = 0;
  std::int64_t F_Splus = 0;
  std::int64_t F_Sminus = 0;
  bool operator==(const SymmetricFrequencies&) const = default;
};

/// Expands orbit values onto all 6n arcs.
FrequencyPlan expand(const SymmetricFrequencies& sf, const CityInstance& city);

/// mu * sum tau_a F_a.
double operator_cost(const FrequencyPlan& plan, const CityInstance& city);
/// (1 - mu) * sum tau_a * total flow on a.
double user_cost(const RoutingFlow& flow, const CityInstance& city);
/// sum tau_a * total flow on a (unweighted passenger-kilometres).
double passenger_distance(const RoutingFlow& flow, const CityInstance& city);
double total_cost(const FrequencyPlan& plan, const RoutingFlow& flow, const CityInstance& city);

/// Flow conservation of F at every node.
bool is_circulation(const FrequencyPlan& plan, const CityInstance& city);

struct FeasibilityReport {
  bool feasible = true;
  double max_violation = 0.0;
  std::string first_violation;
};

/// Checks every ALPP constraint: circulation, 0 <= F <= Lambda, per-origin
/// conservation with the demand-table supplies, x >= 0, and total flow <= K F per arc.
/// `tolerance` is absolute on constraint activities.
FeasibilityReport check_alpp_feasible(const FrequencyPlan& plan, const RoutingFlow& flow, const CityInstance& city,
                                      double tolerance = 1e-7);

}  // namespace pcity
