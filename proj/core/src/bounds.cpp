#include "pcity/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <queue>
#include <sstream>

#include <json.hpp>

namespace pcity {

namespace {

// Mean trip length factor between distinct subcenters: 2k_n destinations are
// reached along the ring (1..k_n hops each way), the other n - 1 - 2k_n via CD.
double ring_factor(int n) {
  const auto [r, k] = geometry_constants(n);
  return (k * (k + 1) * r + 2.0 * (n - 2 * k - 1)) / (n - 1);
}

}  // namespace

double lambda_value(const CityParams& p) {
  const double single = p.mu / p.K + (1 - p.mu);
  const double twice = 2 * p.mu / p.K + (1 - p.mu);
  return ring_factor(p.n) * single * (p.a * p.gamma + (1 - p.a) * p.tilde_gamma()) +
         twice * (p.a * p.alpha + (1 - p.a) * p.tilde_alpha() + p.g * p.a);
}

double lambda_lower(const CityParams& p) {
  return (1 + p.g * p.a - p.a) * ((2 - 2 / std::numbers::pi) * p.mu / p.K + 1 - p.mu);
}

double lambda_upper(const CityParams& p) { return 4 * (1 + p.g * p.a) * (2 * p.mu / p.K + 1 - p.mu); }

double shortest_path_oracle(const CityInstance& city, const UmcfpInstance& umcfp) {
  const int nodes = city.node_count();
  double total = 0;
  using Item = std::pair<double, int>;
  for (int s = 0; s < nodes; ++s) {
    if (umcfp.demand.supply(s) <= 0) continue;
    std::vector<double> dist(static_cast<std::size_t>(nodes), kInfinity);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[s] = 0;
    heap.push({0.0, s});
    while (!heap.empty()) {
      const auto [d, v] = heap.top();
      heap.pop();
      if (d > dist[v]) continue;
      for (int a : city.out_arcs(v)) {
        const int w = city.head_id(a);
        const double nd = d + umcfp.cost[static_cast<std::size_t>(a)];
        if (nd < dist[w]) {
          dist[w] = nd;
          heap.push({nd, w});
        }
      }
    }
    for (int t = 0; t < nodes; ++t) {
      const double demand = umcfp.demand(s, t);
      if (demand > 0) total += demand * dist[t];
    }
  }
  return total;
}

double shortest_path_oracle(const CityInstance& city) { return shortest_path_oracle(city, build_umcfp(city)); }

BoundSet gap_bounds(const CityParams& p) {
  p.validate();
  const double r = geometry_constants(p.n).r_n;
  BoundSet b;
  b.lambda_val = lambda_value(p);
  b.lambda_lo = lambda_lower(p);
  b.lambda_hi = lambda_upper(p);
  b.umcfp_opt = p.T * p.Y * b.lambda_val;
  b.abs_gap_bound = 2 * p.mu * p.T * (1 + r) * (p.n - 1);
  b.op_cost_floor = p.mu * p.T * (2 * p.n * p.g + 2 + (p.n - 1) * r);
  const double geometric = 2 * (1 + r) / (2 * p.g + r);
  const double numerator = p.mu * (p.n - 1) * 2 * (1 + r);
  b.C_n_ag = std::min(numerator / (p.Y * b.lambda_val), geometric);
  b.C_n = b.lambda_lo > 0 ? std::min(numerator / (p.Y * b.lambda_lo), geometric) : geometric;
  b.g_const = (1 + std::numbers::sqrt2) / p.g;
  b.kappa = 1 + b.g_const;
  return b;
}

namespace {

template <class F>
void for_each_field(const BoundSet& b, F&& f) {
  f("umcfp_opt", b.umcfp_opt);
  f("lambda_val", b.lambda_val);
  f("lambda_lo", b.lambda_lo);
  f("lambda_hi", b.lambda_hi);
  f("abs_gap_bound", b.abs_gap_bound);
  f("op_cost_floor", b.op_cost_floor);
  f("C_n_ag", b.C_n_ag);
  f("C_n", b.C_n);
  f("g_const", b.g_const);
  f("kappa", b.kappa);
}

}  // namespace

std::string format_bounds_text(const BoundSet& b) {
  std::ostringstream out;
  out << std::setprecision(12);
  for_each_field(b, [&](const char* key, double v) { out << key << " = " << v << '\n'; });
  return out.str();
}

std::string format_bounds_json(const BoundSet& b) {
  nlohmann::ordered_json j;
  for_each_field(b, [&](const char* key, double v) { j[key] = v; });
  return j.dump(2);
}

}  // namespace pcity
