#include <cmath>

#include <gtest/gtest.h>

#include "pcity/analysis.hpp"
#include "pcity/bounds.hpp"
#include "pcity/model.hpp"
#include "pcity/solver.hpp"

using namespace pcity;

namespace {

CityParams extreme(int n) {
  CityParams p;
  p.n = n;
  p.g = 1.0 / n;
  p.K = p.Y = 1000;
  p.mu = 1;
  p.T = 30;
  return p;
}

}  // namespace

TEST(Alpp, Layout) {
  const CityInstance city = build_city(CityParams{});
  const MilpModel m = build_alpp(city);
  EXPECT_EQ(m.kind, ModelKind::Alpp);
  EXPECT_EQ(m.frequency_vars.size(), 48u);
  EXPECT_EQ(m.commodity_count(), 16);
  EXPECT_EQ(m.integer_count(), 48);
  EXPECT_EQ(m.variables.size(), 48u + 16u * 48u);
  const int f = m.find_variable("F_SC0_CD");
  ASSERT_GE(f, 0);
  EXPECT_TRUE(m.variables[static_cast<std::size_t>(f)].integer);
  EXPECT_DOUBLE_EQ(m.variables[static_cast<std::size_t>(f)].cost, 30.0);
  EXPECT_DOUBLE_EQ(m.variables[static_cast<std::size_t>(f)].upper, 960.0);
  EXPECT_GE(m.find_variable("x_P0_SC0_CD"), 0);
  EXPECT_GE(m.find_variable("x_SC3_SC3_SC4"), 0);
  // Flows into a periphery only close cycles.
  const int x = m.find_variable("x_P0_SC1_P1");
  ASSERT_GE(x, 0);
  EXPECT_EQ(m.variables[static_cast<std::size_t>(x)].upper, 0.0);
  EXPECT_FALSE(m.cut_pool.empty());
}

TEST(AlppSym, ThreeIntegersAndConstantPeriphery) {
  const CityInstance city = build_city(CityParams{});
  const MilpModel m = build_alpp_sym(city);
  EXPECT_EQ(m.kind, ModelKind::AlppSym);
  EXPECT_EQ(m.integer_count(), 3);
  EXPECT_EQ(m.fixed_peripheral_frequency, 24);
  EXPECT_GE(m.find_variable("F_C"), 0);
  EXPECT_GE(m.find_variable("F_Splus"), 0);
  EXPECT_GE(m.find_variable("F_Sminus"), 0);
  EXPECT_EQ(symmetric_group(city, *city.find_arc(Node::sc(2), Node::cd())), 0);
  EXPECT_EQ(symmetric_group(city, *city.find_arc(Node::cd(), Node::sc(2))), 0);
  EXPECT_EQ(symmetric_group(city, *city.find_arc(Node::sc(2), Node::sc(3))), 1);
  EXPECT_EQ(symmetric_group(city, *city.find_arc(Node::sc(2), Node::sc(1))), 2);
  EXPECT_EQ(symmetric_group(city, *city.find_arc(Node::sc(2), Node::p(2))), -1);
}

TEST(AlppSym, StructurallyInfeasibleWhenLambdaBelowPeripheralFrequency) {
  CityParams p;
  p.Lambda = 23;
  const CityInstance city = build_city(p);
  EXPECT_TRUE(build_alpp_sym(city).structurally_infeasible);
  EXPECT_EQ(solve_alpp_sym(city).status, SolveStatus::Infeasible);
  EXPECT_EQ(solve_milp(build_alpp(city)).status, SolveStatus::Infeasible);
}

// ALPP3_S against enumeration of (F_C, F_S+, F_S-) with the routing LP solved
// for each fixed choice.
TEST(AlppSym, MatchesEnumeration) {
  CityParams p = extreme(4);
  p.K = 400;
  p.alpha = 0.3;
  p.gamma = 0.4;
  p.beta = 0.3;
  const CityInstance city = build_city(p);
  const MilpModel m = build_alpp_sym(city);
  MilpModel fixed = build_lp_relaxation(m);
  const int vars[3] = {m.find_variable("F_C"), m.find_variable("F_Splus"), m.find_variable("F_Sminus")};
  double best = kInfinity;
  for (int c = 0; c <= 4; ++c)
    for (int s = 0; s <= 4; ++s)
      for (int t = 0; t <= 4; ++t) {
        const int val[3] = {c, s, t};
        for (int k = 0; k < 3; ++k) {
          fixed.variables[static_cast<std::size_t>(vars[k])].lower = val[k];
          fixed.variables[static_cast<std::size_t>(vars[k])].upper = val[k];
        }
        const Solution r = solve_lp(fixed);
        if (r.status == SolveStatus::Optimal) best = std::min(best, r.objective);
      }
  MilpOptions exact;
  exact.gap_tol = 0;
  const Solution s = solve_alpp_sym(city, exact);
  ASSERT_EQ(s.status, SolveStatus::Optimal);
  EXPECT_NEAR(s.objective, best, 1e-7 * best);
}

TEST(Alpp, ExtremeFamilyClosedForms) {
  for (int n : {4, 6}) {
    const CityInstance city = build_city(extreme(n));
    const double T = 30, g = 1.0 / n, r = geometry_constants(n).r_n;
    const Solution a = solve_alpp(city);
    const Solution s = solve_alpp_sym(city);
    ASSERT_EQ(a.status, SolveStatus::Optimal);
    ASSERT_EQ(s.status, SolveStatus::Optimal);
    EXPECT_NEAR(a.objective, T * (2 * n * g + (n - 1) * r + 2), 1e-6 * a.objective) << n;
    EXPECT_NEAR(s.objective, T * (2 * n * g + 2 * n), 1e-6 * s.objective) << n;
  }
}

TEST(Alpp, SolutionsRespectEveryConstraint) {
  CityParams p;
  p.n = 5;
  p.Y = 3000;
  p.K = 80;
  const CityInstance city = build_city(p.with_shares(0.3, 0.3));
  const MilpModel m = build_alpp(city);
  const Solution s = solve_alpp(city);
  ASSERT_EQ(s.status, SolveStatus::Optimal);
  EXPECT_LE(max_violation(m, s.values, true), 1e-6);
  const FrequencyPlan F = extract_frequency_plan(s, m, city);
  const RoutingFlow x = extract_routing_flow(s, m);
  EXPECT_TRUE(check_alpp_feasible(F, x, city, 1e-6).feasible);
  EXPECT_NEAR(total_cost(F, x, city), s.objective, 1e-6 * s.objective);
  // Valid inequalities hold at the integer optimum.
  for (const auto& cut : m.cut_pool) EXPECT_GE(cut.activity(s.values), cut.lower - 1e-6) << cut.name;
  // Values reassemble.
  const auto v = assemble_values(m, city, F, x);
  EXPECT_NEAR(m.objective(v), s.objective, 1e-9 * s.objective);
}

TEST(Relaxation, UmcfpEqualsRelaxationAtMuOne) {
  const CityInstance city = build_city(CityParams{});
  const Solution lp = solve_alpp_relaxation(city);
  ASSERT_EQ(lp.status, SolveStatus::Optimal);
  EXPECT_NEAR(lp.objective, 11428.450652414733, 1e-6);
  EXPECT_NEAR(shortest_path_oracle(city), lp.objective, 1e-6);
}

TEST(Umcfp, ArcCosts) {
  // Inbound arcs also pay for the empty return trip; outbound ones only carry
  // the user share.
  CityParams p;
  p.mu = 0.25;
  const CityInstance city = build_city(p);
  const auto u = build_umcfp(city);
  const double once = 0.25 / p.K + 0.75, twice = 0.5 / p.K + 0.75;
  for (int a = 0; a < city.arc_count(); ++a) {
    const double tau = city.arc(a).length;
    double expect = 0;
    switch (city.arc_block(a)) {
      case ArcBlock::CentralIn:
      case ArcBlock::FromPeriphery: expect = twice * tau; break;
      case ArcBlock::CentralOut:
      case ArcBlock::ToPeriphery: expect = 0.75 * tau; break;
      default: expect = once * tau;
    }
    EXPECT_NEAR(u.cost[static_cast<std::size_t>(a)], expect, 1e-12);
  }
}
