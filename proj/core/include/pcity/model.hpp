#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "pcity/city.hpp"

namespace pcity {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInfinity;
  double cost = 0.0;
  bool integer = false;
};

/// lower <= sum(coef * x) <= upper; either side may be infinite.
struct Constraint {
  std::string name;
  std::vector<int> index;
  std::vector<double> coef;
  double lower = -kInfinity;
  double upper = kInfinity;

  void add(int var, double value) {
    index.push_back(var);
    coef.push_back(value);
  }
  double activity(const std::vector<double>& x) const {
    double sum = 0;
    for (std::size_t k = 0; k < index.size(); ++k) sum += coef[k] * x[static_cast<std::size_t>(index[k])];
    return sum;
  }
};

enum class ModelKind { Alpp, AlppSym, Generic };

/// A minimization MILP: sum(cost * x) + objective_offset subject to the
/// constraints and variable bounds.
///
/// Line-planning models also carry their structure so solutions can be mapped
/// back to arcs and commodities. Commodity c < n originates at P_c, commodity
/// n + i at SC_i. flow_var[c * arc_count + a] is the variable of x^c_a.
struct MilpModel {
  ModelKind kind = ModelKind::Generic;
  bool relaxed = false;

  std::vector<Variable> variables;
  std::vector<Constraint> constraints;
  double objective_offset = 0.0;

  /// Valid inequalities that are not part of the formulation. Branch-and-bound
  /// adds violated members to node LPs; plain LP solves ignore them.
  std::vector<Constraint> cut_pool;

  // Structure (empty for generic models).
  int n = 0;
  int arc_count = 0;
  std::vector<int> frequency_vars;  // ALPP: one per arc. ALPP3_S: F_C, F_S+, F_S-.
  std::vector<int> commodity_origin;  // node ids
  std::vector<int> flow_var;
  std::int64_t fixed_peripheral_frequency = 0;  // ALPP3_S only
  double vehicle_capacity = 0.0;

  /// Set when the model is infeasible by construction (e.g. F_P > Lambda).
  bool structurally_infeasible = false;
  std::string infeasibility_reason;

  int commodity_count() const { return static_cast<int>(commodity_origin.size()); }
  int integer_count() const;
  int flow(int commodity, int arc) const {
    return flow_var[static_cast<std::size_t>(commodity) * arc_count + arc];
  }
  int find_variable(const std::string& name) const;  // -1 if absent
  double objective(const std::vector<double>& x) const;
};

/// Commodity index of an origin node id, or -1.
int commodity_of_origin(int n, int origin_node_id);
/// Rotation of a commodity index by z zones.
int rotate_commodity(int n, int commodity, int z);

/// Arc-based line-planning MILP. Routing uses per-origin arc flows (2n
/// commodities). Flow variables on arcs entering a periphery or the
/// commodity's own origin can only carry cycles; they are fixed to zero.
MilpModel build_alpp(const CityInstance& city);

/// Symmetric restriction with three integer variables F_C, F_S+, F_S- and the
/// constant peripheral frequency F_P = ceil(Ya/(nK)).
MilpModel build_alpp_sym(const CityInstance& city);

/// Same model with integrality dropped.
MilpModel build_lp_relaxation(const MilpModel& model);

/// ALPP3_S orbit grouping of an arc: 0 -> F_C, 1 -> F_S+, 2 -> F_S-, -1 ->
/// peripheral (constant F_P).
int symmetric_group(const CityInstance& city, int arc);

/// Uncapacitated minimum-cost flow relaxation.
struct UmcfpInstance {
  std::vector<double> cost;  // per arc id
  DemandMatrix demand;
};

UmcfpInstance build_umcfp(const CityInstance& city);

/// Cut-set inequalities sum_{a in delta+(S)} F_a >= ceil(max(D_out(S), D_in(S)) / K)
/// for node sets S made of cyclic zone intervals (each SC with its P), with
/// and without CD, plus singletons. Expressed over ALPP frequency variables.
std::vector<Constraint> cut_set_inequalities(const CityInstance& city, const std::vector<int>& frequency_vars);

/// Symmetry-breaking rows for ALPP: F(SC_0->CD) >= F(SC_i->CD) for all i and
/// F(SC_1->CD) >= F(SC_{n-1}->CD). Rotations and the reflection i -> -i map
/// feasible plans to feasible plans of equal cost, so some optimum satisfies
/// them; they may cut off other optima. Arc-symmetric plans satisfy them.
std::vector<Constraint> symmetry_breaking_rows(const CityInstance& city, const std::vector<int>& frequency_vars);

}  // namespace pcity
