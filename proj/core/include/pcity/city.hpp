#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcity {

/// Raised when parameters or inputs violate a documented invariant. The
/// message names the violated condition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameters of a Parametric City together with the line-planning knobs
/// (vehicle capacity, street capacity and the cost weight).
struct CityParams {
  int n = 8;             // zones
  double T = 30.0;       // subcenter radius
  double g = 1.0 / 3.0;  // periphery offset factor
  double Y = 24000.0;    // patronage
  double a = 0.8;        // share of trips starting in a periphery
  double alpha = 0.25;
  double beta = 0.5;
  double gamma = 0.25;
  double K = 100.0;               // vehicle capacity
  std::optional<double> Lambda;   // street capacity; see effective_lambda()
  double mu = 1.0;                // operator-cost weight

  double tilde_alpha() const { return alpha / (alpha + gamma); }
  double tilde_gamma() const { return gamma / (alpha + gamma); }

  /// Frequency forced on every peripheral arc, ceil(Y a / (n K)).
  std::int64_t peripheral_frequency() const;

  /// Lambda if set, otherwise 4 * max(ceil(Ya/(nK)), ceil(Y/K)).
  double effective_lambda() const;

  /// Throws ValidationError naming the first violated invariant.
  void validate() const;

  /// Convenience: set alpha/gamma and derive beta = 1 - alpha - gamma.
  CityParams with_shares(double alpha_, double gamma_) const;
};

enum class NodeKind : std::uint8_t { CD, SC, P };

struct Node {
  NodeKind kind = NodeKind::CD;
  int index = 0;  // zone index, always 0 for CD

  static Node cd() { return {NodeKind::CD, 0}; }
  static Node sc(int i) { return {NodeKind::SC, i}; }
  static Node p(int i) { return {NodeKind::P, i}; }

  auto operator<=>(const Node&) const = default;
};

/// "CD", "SC3", "P0".
std::string to_string(const Node& node);
/// Inverse of to_string; throws ValidationError on malformed labels.
Node parse_node(const std::string& label);

/// Arc blocks in canonical order; arc id = block * n + zone.
enum class ArcBlock : int {
  CentralOut = 0,  // CD -> SC_i
  RingCcw = 1,     // SC_i -> SC_{i+1}
  RingCw = 2,      // SC_i -> SC_{i-1}
  ToPeriphery = 3, // SC_i -> P_i
  FromPeriphery = 4,  // P_i -> SC_i
  CentralIn = 5,   // SC_i -> CD
};
inline constexpr int kArcBlocks = 6;

struct Arc {
  Node tail;
  Node head;
  double length = 0.0;
};

/// r_n = 2 sin(pi/n) and k_n = floor(2 / r_n).
struct GeometryConstants {
  double r_n = 0.0;
  int k_n = 0;
};

/// Throws ValidationError for n < 4. k_n uses floor(2/r_n + 1e-12) so the
/// tie at n = 6 evaluates to 2.
GeometryConstants geometry_constants(int n);

/// Rotation by z zones, implemented by index arithmetic modulo n.
Node rotate(const Node& node, int z, int n);
std::vector<Node> rotate(std::span<const Node> nodes, int z, int n);

/// OD demand of a Parametric City. Dense (2n+1)^2 storage addressed by node id.
class DemandMatrix {
 public:
  DemandMatrix() = default;
  DemandMatrix(int node_count, std::vector<double> values);

  double operator()(int origin, int destination) const {
    return values_[static_cast<std::size_t>(origin) * node_count_ + destination];
  }
  int node_count() const { return node_count_; }

  /// Pairs with strictly positive demand, ordered by (origin, destination).
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }

  /// Sum of row `origin`.
  double supply(int origin) const;
  double total() const;

 private:
  int node_count_ = 0;
  std::vector<double> values_;
  std::vector<std::pair<int, int>> pairs_;
};

/// Demand table for `params`. Validates the parameters first.
DemandMatrix build_demand(const CityParams& params);

/// Immutable city: helm graph with arc lengths and demand.
///
/// Node ids: CD = 0, SC_i = 1 + i, P_i = 1 + n + i.
/// Arc ids:  block * n + i with blocks in ArcBlock order.
class CityInstance {
 public:
  explicit CityInstance(CityParams params);

  const CityParams& params() const { return params_; }
  int n() const { return params_.n; }
  int node_count() const { return 2 * params_.n + 1; }
  int arc_count() const { return 6 * params_.n; }
  const GeometryConstants& geometry() const { return geometry_; }

  std::span<const Node> nodes() const { return nodes_; }
  std::span<const Arc> arcs() const { return arcs_; }
  const Arc& arc(int id) const { return arcs_[static_cast<std::size_t>(id)]; }
  const DemandMatrix& demand() const { return demand_; }

  int node_id(const Node& node) const;
  const Node& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }

  static int arc_id(ArcBlock block, int zone, int n) {
    return static_cast<int>(block) * n + zone;
  }
  int arc_id(ArcBlock block, int zone) const { return arc_id(block, zone, n()); }
  ArcBlock arc_block(int id) const { return static_cast<ArcBlock>(id / n()); }
  int arc_zone(int id) const { return id % n(); }

  /// Arc id for (tail, head), or nullopt if not adjacent.
  std::optional<int> find_arc(const Node& tail, const Node& head) const;
  std::optional<int> find_arc(int tail_id, int head_id) const;

  /// Arc ids leaving / entering a node, ascending.
  std::span<const int> out_arcs(int node_id) const { return out_[static_cast<std::size_t>(node_id)]; }
  std::span<const int> in_arcs(int node_id) const { return in_[static_cast<std::size_t>(node_id)]; }

  int tail_id(int arc) const { return tail_ids_[static_cast<std::size_t>(arc)]; }
  int head_id(int arc) const { return head_ids_[static_cast<std::size_t>(arc)]; }

  int rotate_node(int node_id, int z) const;
  int rotate_arc(int arc_id, int z) const;

  /// Planar coordinates (derived, not identity).
  std::pair<double, double> coordinates(const Node& node) const;

 private:
  CityParams params_;
  GeometryConstants geometry_;
  std::vector<Node> nodes_;
  std::vector<Arc> arcs_;
  std::vector<int> tail_ids_;
  std::vector<int> head_ids_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
  DemandMatrix demand_;
};

/// Validates and builds.
CityInstance build_city(const CityParams& params);

}  // namespace pcity
