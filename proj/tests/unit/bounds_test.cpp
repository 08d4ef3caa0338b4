#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "../support.hpp"
#include "pcity/bounds.hpp"
#include "pcity/config.hpp"

using namespace pcity;

TEST(Lambda, MatchesShortestPathsOnRandomCities) {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 200; ++k) {
    const CityParams p = testkit::random_params(rng, 4, 12);
    const CityInstance city = build_city(p);
    const double oracle = shortest_path_oracle(city);
    EXPECT_NEAR(p.T * p.Y * lambda_value(p), oracle, 1e-9 * oracle) << format_config(p);
    EXPECT_LE(lambda_lower(p), lambda_value(p) * (1 + 1e-12));
    EXPECT_LE(lambda_value(p), lambda_upper(p) * (1 + 1e-12));
  }
}

TEST(Lambda, LowerBoundFactorStaysBelowRingFactor) {
  // lambda >= the sandwich needs the mean SC-to-SC trip factor to be at least
  // 2 - 2/pi for every n.
  for (int n = 4; n <= 2000; ++n) {
    CityParams p;
    p.n = n;
    p.mu = 1;
    p.a = 0.5;
    p.alpha = 0.01;
    p.gamma = 0.98;
    p.beta = 0.01;
    EXPECT_LE(lambda_lower(p), lambda_value(p)) << n;
  }
}

TEST(Bounds, ReportedValues) {
  CityParams p;  // g = 1/3
  const BoundSet b = gap_bounds(p);
  EXPECT_NEAR(b.kappa, 8.2426, 1e-4);
  EXPECT_NEAR(b.g_const, 3 * (1 + std::sqrt(2.0)), 1e-12);
  const double r = geometry_constants(8).r_n;
  EXPECT_NEAR(b.abs_gap_bound, 2 * 30 * (1 + r) * 7, 1e-9);
  EXPECT_NEAR(b.op_cost_floor, 30 * (2 * 8 / 3.0 + 2 + 7 * r), 1e-9);
  EXPECT_NEAR(b.umcfp_opt, 11428.450652414733, 1e-6);
  EXPECT_LE(b.lambda_lo, b.lambda_val);
  EXPECT_LE(b.lambda_val, b.lambda_hi);
  EXPECT_LE(b.C_n_ag, b.C_n);

  p.mu = 0;
  EXPECT_EQ(gap_bounds(p).abs_gap_bound, 0.0);
  EXPECT_EQ(gap_bounds(p).C_n_ag, 0.0);
}

TEST(Bounds, TextAndJsonCarryTheSameKeys) {
  const BoundSet b = gap_bounds(CityParams{});
  const std::string text = format_bounds_text(b), json = format_bounds_json(b);
  for (const char* key : {"umcfp_opt", "lambda_val", "lambda_lo", "lambda_hi", "abs_gap_bound", "op_cost_floor",
                          "C_n_ag", "C_n", "g_const", "kappa"}) {
    EXPECT_NE(text.find(std::string(key) + " = "), std::string::npos) << key;
    EXPECT_NE(json.find(std::string("\"") + key + "\""), std::string::npos) << key;
  }
}
