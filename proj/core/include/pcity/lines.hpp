#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcity/plan.hpp"
#include "pcity/solver.hpp"

namespace pcity {

/// Simple directed cycle given by its node sequence (closing arc implied).
/// Two-node cycles are pendulum lines over an antiparallel pair.
struct Line {
  std::vector<Node> nodes;

  bool operator==(const Line&) const = default;
  auto operator<=>(const Line&) const = default;
};

/// Arc ids of a line in traversal order; throws ValidationError if the line
/// is not a simple cycle of the city graph.
std::vector<int> line_arcs(const Line& line, const CityInstance& city);
double line_length(const Line& line, const CityInstance& city);
/// Same cycle started at its smallest node.
Line canonical(const Line& line);
Line rotate(const Line& line, int z, int n);

struct LinePlanEntry {
  Line line;
  std::int64_t frequency = 0;
};

struct LinePlan {
  std::vector<LinePlanEntry> entries;
};

/// Sum of line frequencies on each arc.
FrequencyPlan aggregate(const LinePlan& plan, const CityInstance& city);
/// Sum of tau_l f_l.
double line_cost(const LinePlan& plan, const CityInstance& city);

/// Length of a plan split by arc class, counted in units of T (central),
/// g T (peripheral) and r_n T (ring); compares exactly.
struct LengthProfile {
  std::int64_t central = 0;
  std::int64_t peripheral = 0;
  std::int64_t ring = 0;
  bool operator==(const LengthProfile&) const = default;
};
LengthProfile length_profile(const LinePlan& plan, const CityInstance& city);
LengthProfile length_profile(const FrequencyPlan& plan, const CityInstance& city);

/// Decomposes an integer circulation into simple cycles. Scans arcs in id
/// order; from the first arc with residual frequency it walks along the
/// lowest-id outgoing arc with residual until a node repeats, and extracts
/// that cycle at its bottleneck frequency. Throws ValidationError if F is not
/// a nonnegative circulation.
LinePlan decompose_circulation(const FrequencyPlan& F, const CityInstance& city);

/// Pendulums (P_i, SC_i) at F_P and (SC_i, CD) at F_C, the counterclockwise
/// ring at F_S+ and the clockwise ring at F_S-; zero frequencies omitted.
LinePlan canonical_symmetric_lineplan(const SymmetricFrequencies& sf, const CityInstance& city);

/// Multiset equality of two plans after canonicalizing every line.
bool same_lineplan(const LinePlan& a, const LinePlan& b);

/// JSON list of {nodes, frequency, length}.
std::string to_json(const LinePlan& plan, const CityInstance& city, int indent = 2);

struct LpaResult {
  SolveStatus status = SolveStatus::Error;
  std::string message;
  SymmetricFrequencies frequencies;
  LinePlan plan;
  RoutingFlow flow;
  double cost = 0.0;
  Solution solution;
};

/// Best symmetric solution: solves ALPP3_S and returns its canonical
/// symmetric line plan together with the routing.
LpaResult lpa(const CityParams& params, const MilpOptions& options = {});

}  // namespace pcity
