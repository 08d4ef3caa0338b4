#include <random>

#include <gtest/gtest.h>
#include <json.hpp>

#include "../support.hpp"
#include "pcity/analysis.hpp"
#include "pcity/lines.hpp"

using namespace pcity;

TEST(Line, ArcsAndValidation) {
  const CityInstance city = build_city(CityParams{});
  const Line pendulum{{Node::p(0), Node::sc(0)}};
  EXPECT_EQ(line_arcs(pendulum, city).size(), 2u);
  EXPECT_NEAR(line_length(pendulum, city), 20.0, 1e-12);
  EXPECT_THROW(line_arcs(Line{{Node::p(0), Node::cd()}}, city), ValidationError);
  EXPECT_THROW(line_arcs(Line{{Node::sc(0), Node::cd(), Node::sc(0)}}, city), ValidationError);
  EXPECT_THROW(line_arcs(Line{{Node::sc(0)}}, city), ValidationError);
  const Line tri{{Node::sc(3), Node::cd(), Node::sc(2)}};
  EXPECT_EQ(canonical(tri).nodes.front(), Node::cd());
  EXPECT_EQ(rotate(tri, 6, 8).nodes[0], Node::sc(1));
}

TEST(Decompose, RandomCirculationsRoundTrip) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> n_dist(4, 10);
  for (int k = 0; k < 100; ++k) {
    CityParams p;
    p.n = n_dist(rng);
    const CityInstance city = build_city(p);
    const FrequencyPlan F = testkit::random_circulation(rng, city, 1 + k % 12, 20);
    const LinePlan plan = decompose_circulation(F, city);
    EXPECT_EQ(aggregate(plan, city), F);
    EXPECT_EQ(length_profile(plan, city), length_profile(F, city));
    for (const auto& e : plan.entries) EXPECT_GT(e.frequency, 0);
    // Deterministic.
    EXPECT_TRUE(same_lineplan(plan, decompose_circulation(F, city)));
  }
}

TEST(Decompose, RejectsNonCirculations) {
  const CityInstance city = build_city(CityParams{});
  FrequencyPlan F;
  F.F.assign(48, 0);
  F[0] = 1;
  EXPECT_THROW(decompose_circulation(F, city), ValidationError);
  F[0] = -1;
  EXPECT_THROW(decompose_circulation(F, city), ValidationError);
  F.F.assign(47, 0);
  EXPECT_THROW(decompose_circulation(F, city), ValidationError);
}

TEST(SymmetricLinePlan, AggregatesToTheOrbitPlan) {
  const CityInstance city = build_city(CityParams{});
  const SymmetricFrequencies sf{24, 13, 4, 2};
  const LinePlan plan = canonical_symmetric_lineplan(sf, city);
  EXPECT_EQ(plan.entries.size(), 18u);
  EXPECT_EQ(aggregate(plan, city), expand(sf, city));
  const SymmetricFrequencies no_ring{24, 13, 0, 0};
  EXPECT_EQ(canonical_symmetric_lineplan(no_ring, city).entries.size(), 16u);
}

TEST(SymmetricLinePlan, JsonFields) {
  const CityInstance city = build_city(CityParams{});
  const LinePlan plan = canonical_symmetric_lineplan({24, 13, 4, 4}, city);
  const auto j = nlohmann::json::parse(to_json(plan, city));
  ASSERT_EQ(j.size(), plan.entries.size());
  EXPECT_EQ(j[0]["nodes"][0], "P0");
  EXPECT_EQ(j[0]["frequency"], 24);
  EXPECT_DOUBLE_EQ(j[0]["length"].get<double>(), 20.0);
}

TEST(Lpa, CostMatchesSymmetricOptimum) {
  const CityParams p;
  const LpaResult r = lpa(p);
  ASSERT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_NEAR(r.cost, 11549.504380281945, 1e-6);
  const CityInstance city = build_city(p);
  const FrequencyPlan F = aggregate(r.plan, city);
  EXPECT_EQ(F, expand(r.frequencies, city));
  EXPECT_TRUE(check_alpp_feasible(F, r.flow, city, 1e-6).feasible);
  EXPECT_NEAR(total_cost(F, r.flow, city), r.cost, 1e-9 * r.cost);

  CityParams tight = p;
  tight.Lambda = 10;
  EXPECT_EQ(lpa(tight).status, SolveStatus::Infeasible);
}
