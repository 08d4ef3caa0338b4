#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pcity/model.hpp"
#include "pcity/plan.hpp"
#include "pcity/simplex.hpp"

namespace pcity {

enum class SolveStatus { Optimal, Infeasible, Unbounded, GapLimit, Error };

const char* to_string(SolveStatus status);

struct SolveStats {
  std::int64_t nodes = 0;
  std::int64_t lp_iterations = 0;
  int cuts_added = 0;
  std::int64_t strong_branches = 0;
  double wall_ms = 0.0;
  /// Global lower bound / incumbent after each processed node (branch-and-bound only).
  std::vector<double> bound_trace;
  std::vector<double> incumbent_trace;
};

struct Solution {
  SolveStatus status = SolveStatus::Error;
  std::string message;
  double objective = std::numeric_limits<double>::quiet_NaN();
  double bound = std::numeric_limits<double>::quiet_NaN();
  double gap = std::numeric_limits<double>::quiet_NaN();
  /// One value per model variable; empty unless a solution is available.
  std::vector<double> values;
  SolveStats stats;
  /// Identifies the city a solution belongs to (set by the analysis pipeline).
  std::string instance;

  bool has_values() const { return !values.empty(); }
};

/// Candidate generator called with LP solutions (model-variable space). It
/// returns a full assignment; branch-and-bound verifies feasibility and
/// integrality before accepting it.
using Heuristic = std::function<std::optional<std::vector<double>>(const std::vector<double>& lp_values)>;

enum class BranchingRule { Reliability, MostFractional };

struct MilpOptions {
  double gap_tol = 1e-4;
  std::int64_t node_limit = 2'000'000;
  double time_limit_s = 3600.0;
  double integrality_tol = 1e-6;
  double feasibility_tol = 1e-7;
  /// Separate violated members of the model's cut pool at every node.
  bool use_cut_pool = true;
  int max_cut_rounds = 20;
  BranchingRule branching = BranchingRule::Reliability;
  /// Reliability branching: strong-branch candidates whose pseudocosts have
  /// fewer observations than this, at most `strong_branching_candidates` per
  /// node with a pivot budget per child LP.
  int reliability = 2;
  int strong_branching_candidates = 8;
  std::int64_t strong_branching_iterations = 200;
  /// Call the heuristic every this many nodes (root always).
  int heuristic_frequency = 50;
  Heuristic heuristic;
  /// Known feasible solution used as the starting incumbent.
  std::optional<std::vector<double>> initial_incumbent;
  bool record_trace = false;
  lp::SimplexOptions simplex;
};

/// Solves the model with integrality ignored. Optimal solutions satisfy the
/// constraints within 1e-7.
Solution solve_lp(const MilpModel& model, const lp::SimplexOptions& options = {});

/// Best-first branch-and-bound (ties: lower node id) with reliability or
/// most-fractional branching (ties: lowest variable index). Stops with Optimal once
/// (incumbent - bound) / max(|incumbent|, 1e-12) <= gap_tol.
Solution solve_milp(const MilpModel& model, const MilpOptions& options = {});

/// Max absolute violation of constraints, bounds and (optionally) integrality.
double max_violation(const MilpModel& model, const std::vector<double>& values, bool check_integrality,
                     std::string* where = nullptr);

/// Integer arc frequencies from an ALPP or ALPP3_S solution. ALPP3_S values
/// are expanded by orbit (F_P is the model constant). Throws ValidationError
/// when a frequency is more than 1e-6 away from an integer or the status has
/// no solution.
FrequencyPlan extract_frequency_plan(const Solution& solution, const MilpModel& model, const CityInstance& city);

/// Per-commodity arc flows of a solution.
RoutingFlow extract_routing_flow(const Solution& solution, const MilpModel& model);

/// Model-variable assignment for a plan + flow (inverse of the two extractors).
std::vector<double> assemble_values(const MilpModel& model, const CityInstance& city, const FrequencyPlan& plan,
                                    const RoutingFlow& flow);

}  // namespace pcity
