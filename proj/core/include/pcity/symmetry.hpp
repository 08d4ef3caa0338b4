#pragma once

#include <optional>
#include <string>
#include <utility>

#include "pcity/plan.hpp"
#include "pcity/solver.hpp"

namespace pcity {

/// Rotation of a commodity flow: commodity o maps to rho_z(o), arc a to rho_z(a).
RoutingFlow rotate(const RoutingFlow& flow, const CityInstance& city, int z);
FrequencyPlan rotate(const FrequencyPlan& plan, const CityInstance& city, int z);

/// Symmetrization: F^s_a = ceil(mean of F over the orbit of a) and the
/// flow averaged over all n rotations. Throws ValidationError if (plan, flow)
/// is not ALPP-feasible (tolerance 1e-6 on activities).
std::pair<FrequencyPlan, RoutingFlow> symmetrize(const FrequencyPlan& plan, const RoutingFlow& flow,
                                                 const CityInstance& city);

bool is_arc_symmetric(const FrequencyPlan& plan, const CityInstance& city);

/// Orbit values of an arc-symmetric plan (nullopt otherwise, or when the two
/// central orbits differ).
std::optional<SymmetricFrequencies> symmetric_frequencies(const FrequencyPlan& plan, const CityInstance& city);

/// Rotation invariance of per-commodity arc flows, x(o, a) = x(rho(o), rho(a)).
bool is_flow_symmetric(const RoutingFlow& flow, const CityInstance& city, double tolerance = 1e-9);

/// Averaged flow for an arc-symmetric feasible plan.
RoutingFlow symmetric_flow_from_symmetric_plan(const FrequencyPlan& plan, const RoutingFlow& flow,
                                               const CityInstance& city);

/// Arc-symmetric plan sized to a rotation-invariant flow,
/// F_P = F(P0->SC0), F_S+ = ceil(Y(SC0,SC1)/K), F_S- = ceil(Y(SC0,SC_{n-1})/K),
/// F_C = ceil(Y(SC0,CD)/K), where Y is the total arc flow.
FrequencyPlan symmetric_plan_from_symmetric_flow(const RoutingFlow& flow, const FrequencyPlan& plan,
                                                 const CityInstance& city);

enum class GapClass { Symmetric, Asymmetric, Infeasible };
const char* to_string(GapClass c);

struct GapReport {
  double opt_alpp = 0.0;
  double opt_alpps = 0.0;
  double gamma_abs = 0.0;
  double gamma_rel = 0.0;
  GapClass classification = GapClass::Infeasible;
};

/// Relative gap at or below this counts as symmetric.
inline constexpr double kClassificationTolerance = 1e-6;

/// Both solutions must be Optimal, or both Infeasible. Throws
/// ValidationError on mismatched instances or one-sided infeasibility.
GapReport symmetry_gap(const Solution& alpp, const Solution& alpps);

}  // namespace pcity
