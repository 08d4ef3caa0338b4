#pragma once
// Generators shared by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "pcity/city.hpp"
#include "pcity/plan.hpp"
#include "pcity/symmetry.hpp"

namespace pcity::testkit {

// Valid parameters with interior shares.
inline CityParams random_params(std::mt19937_64& rng, int n_lo, int n_hi) {
  std::uniform_int_distribution<int> n(n_lo, n_hi);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CityParams p;
  p.n = n(rng);
  p.T = 5 + 50 * u(rng);
  p.g = 0.05 + 0.9 * u(rng);
  p.Y = 1000 + 50000 * u(rng);
  p.a = 0.05 + 0.9 * u(rng);
  // Dirichlet(1,1,1) kept away from the boundary.
  double s[3];
  do {
    for (double& x : s) x = -std::log(1 - u(rng));
    const double t = s[0] + s[1] + s[2];
    for (double& x : s) x /= t;
  } while (std::min({s[0], s[1], s[2]}) < 0.01);
  p.alpha = s[0];
  p.gamma = s[1];
  p.beta = 1 - s[0] - s[1];
  p.K = 20 + 200 * u(rng);
  p.mu = u(rng);
  return p;
}

// Sum of simple cycles found by random walks, each at a random frequency.
inline FrequencyPlan random_circulation(std::mt19937_64& rng, const CityInstance& city, int cycles,
                                        std::int64_t max_freq) {
  FrequencyPlan F;
  F.F.assign(static_cast<std::size_t>(city.arc_count()), 0);
  std::uniform_int_distribution<std::int64_t> freq(1, max_freq);
  std::uniform_int_distribution<int> start(0, city.node_count() - 1);
  for (int k = 0; k < cycles; ++k) {
    std::vector<int> seen(static_cast<std::size_t>(city.node_count()), -1);
    std::vector<int> arcs;
    int v = start(rng);
    seen[static_cast<std::size_t>(v)] = 0;
    while (true) {
      const auto& out = city.out_arcs(v);
      std::uniform_int_distribution<std::size_t> pick(0, out.size() - 1);
      const int a = out[pick(rng)];
      arcs.push_back(a);
      v = city.head_id(a);
      if (seen[static_cast<std::size_t>(v)] >= 0) {
        const std::int64_t f = freq(rng);
        for (std::size_t i = static_cast<std::size_t>(seen[static_cast<std::size_t>(v)]); i < arcs.size(); ++i) {
          F[arcs[i]] += f;
        }
        break;
      }
      seen[static_cast<std::size_t>(v)] = static_cast<int>(arcs.size());
    }
  }
  return F;
}

// Feasible neighbour of a feasible (F, x): the flow is mixed with a rotated
// copy, F gains the rotated plan (so capacity still holds) and a few random
// cycles. Returns false if the result breaks the street capacity.
inline bool perturb_feasible(std::mt19937_64& rng, const CityInstance& city, const FrequencyPlan& F,
                             const RoutingFlow& x, FrequencyPlan& F_out, RoutingFlow& x_out) {
  std::uniform_int_distribution<int> zone(1, city.n() - 1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int z = zone(rng);
  const double t = u(rng);
  const RoutingFlow xr = rotate(x, city, z);
  x_out = x;
  for (std::size_t k = 0; k < x.x.size(); ++k) x_out.x[k] = (1 - t) * x.x[k] + t * xr.x[k];
  F_out = F;
  const FrequencyPlan Fr = rotate(F, city, z);
  for (int a = 0; a < city.arc_count(); ++a) F_out[a] = std::max(F[a], Fr[a]);
  // max() is not a circulation in general; top up with the rotated plan.
  if (!is_circulation(F_out, city)) {
    for (int a = 0; a < city.arc_count(); ++a) F_out[a] = F[a] + Fr[a];
  }
  const FrequencyPlan extra = random_circulation(rng, city, 3, 3);
  for (int a = 0; a < city.arc_count(); ++a) F_out[a] += extra[a];
  return check_alpp_feasible(F_out, x_out, city, 1e-6).feasible;
}

}  // namespace pcity::testkit
