#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcity/solver.hpp"
#include "pcity/symmetry.hpp"

namespace pcity {

/// Stable text key of an instance (used to match solutions to cities).
std::string instance_key(const CityParams& params);

/// Symmetric restriction (ALPP3_S) solved by branch-and-bound over its three
/// integer variables.
Solution solve_alpp_sym(const CityInstance& city, const MilpOptions& options = {});

/// Full ALPP. When `symmetric` holds an optimal ALPP3_S solution of the same
/// city it becomes the starting incumbent. The symmetrizing rounding heuristic
/// is installed unless options.heuristic is already set.
Solution solve_alpp(const CityInstance& city, const MilpOptions& options = {}, const Solution* symmetric = nullptr);

/// LP relaxation of ALPP (no cut pool).
Solution solve_alpp_relaxation(const CityInstance& city);

/// Rounding heuristic: averages the LP flow over all rotations and sizes an
/// arc-symmetric plan to it (symmetric_plan_from_symmetric_flow). Returns ALPP values.
std::optional<std::vector<double>> symmetric_rounding(const std::vector<double>& lp_values, const MilpModel& alpp,
                                                      const CityInstance& city);

/// Maps an ALPP3_S solution onto ALPP variables.
std::vector<double> lift_symmetric_solution(const Solution& symmetric, const MilpModel& alpp_sym,
                                            const MilpModel& alpp, const CityInstance& city);

struct InstanceResult {
  Solution alpp;
  Solution alpps;
  GapReport gap;
  bool resolved_exactly = false;  // ALPP re-solved to a zero gap for classification
};

/// Relative distance below which both models are re-solved to proven
/// optimality before classifying.
inline constexpr double kNearTieTolerance = 2e-4;

/// Solves ALPP3_S and ALPP and classifies the instance. When the two values
/// are within kNearTieTolerance, ALPP is re-solved with a zero gap so that
/// near ties are not misclassified.
InstanceResult analyze_instance(const CityInstance& city, const MilpOptions& options = {});

}  // namespace pcity
