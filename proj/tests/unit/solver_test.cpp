#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "pcity/lp_format.hpp"
#include "pcity/model.hpp"
#include "pcity/simplex.hpp"
#include "pcity/solver.hpp"

using namespace pcity;

namespace {

MilpModel model_of(std::vector<Variable> vars, std::vector<Constraint> rows) {
  MilpModel m;
  m.variables = std::move(vars);
  m.constraints = std::move(rows);
  return m;
}

Constraint row(std::vector<int> idx, std::vector<double> coef, double lo, double up) {
  Constraint c;
  c.index = std::move(idx);
  c.coef = std::move(coef);
  c.lower = lo;
  c.upper = up;
  return c;
}

}  // namespace

TEST(DualSimplex, TextbookLp) {
  lp::DualSimplex s(2, {-1, -1}, {0, 0}, {kInfinity, kInfinity});
  s.add_row({0, 1}, {1, 2}, -kInfinity, 4);
  s.add_row({0, 1}, {3, 1}, -kInfinity, 6);
  ASSERT_EQ(s.solve(), lp::LpStatus::Optimal);
  EXPECT_NEAR(s.objective(), -2.8, 1e-9);
  EXPECT_NEAR(s.primal()[0], 1.6, 1e-9);
  EXPECT_NEAR(s.primal()[1], 1.2, 1e-9);
}

TEST(DualSimplex, InfeasibleAndUnbounded) {
  lp::DualSimplex inf(2, {1, 1}, {0, 0}, {1, 1});
  inf.add_row({0, 1}, {1, 1}, 5, kInfinity);
  EXPECT_EQ(inf.solve(), lp::LpStatus::Infeasible);

  lp::DualSimplex unb(2, {-1, 0}, {0, 0}, {kInfinity, 1});
  unb.add_row({0, 1}, {1, -1}, -1, kInfinity);
  EXPECT_EQ(unb.solve(), lp::LpStatus::Unbounded);
}

TEST(DualSimplex, WarmStartAfterBoundChange) {
  lp::DualSimplex s(2, {-1, -1}, {0, 0}, {kInfinity, kInfinity});
  s.add_row({0, 1}, {1, 2}, -kInfinity, 4);
  s.add_row({0, 1}, {3, 1}, -kInfinity, 6);
  ASSERT_EQ(s.solve(), lp::LpStatus::Optimal);
  s.set_col_bounds(0, 0, 1);
  ASSERT_EQ(s.solve(), lp::LpStatus::Optimal);
  EXPECT_NEAR(s.objective(), -2.5, 1e-9);  // x = 1, y = 1.5
  const int r = s.add_row({1}, {1}, -kInfinity, 1);
  EXPECT_EQ(r, 2);
  ASSERT_EQ(s.solve(), lp::LpStatus::Optimal);
  EXPECT_NEAR(s.objective(), -2.0, 1e-9);
}

TEST(SolveLp, EqualityAndFreeColumns) {
  // min x - y, x + y = 2, x - y >= -4, y free, x in [0, 10]
  auto m = model_of({{"x", 0, 10, 1, false}, {"y", -kInfinity, kInfinity, -1, false}},
                    {row({0, 1}, {1, 1}, 2, 2), row({0, 1}, {1, -1}, -4, kInfinity)});
  m.objective_offset = 0.5;
  const Solution s = solve_lp(m);
  ASSERT_EQ(s.status, SolveStatus::Optimal);
  EXPECT_NEAR(s.objective, -2 + 0.5, 1e-9);  // x = 0, y = 2
  EXPECT_LE(max_violation(m, s.values, false), 1e-7);
}

// Random bounded integer programs against full enumeration.
TEST(BranchAndBound, MatchesEnumeration) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-5, 9), cost(-9, 9), rhs(3, 20);
  for (int trial = 0; trial < 60; ++trial) {
    const int nv = 3;
    std::vector<Variable> vars;
    for (int j = 0; j < nv; ++j) vars.push_back({"x" + std::to_string(j), 0, 4, double(cost(rng)), true});
    std::vector<Constraint> rows;
    for (int i = 0; i < 3; ++i) {
      rows.push_back(row({0, 1, 2}, {double(coef(rng)), double(coef(rng)), double(coef(rng))}, -kInfinity, rhs(rng)));
    }
    rows.push_back(row({0, 1, 2}, {1, 1, 1}, 2, kInfinity));
    const auto m = model_of(vars, rows);

    double best = kInfinity;
    for (int a = 0; a <= 4; ++a)
      for (int b = 0; b <= 4; ++b)
        for (int c = 0; c <= 4; ++c) {
          const std::vector<double> x{double(a), double(b), double(c)};
          if (max_violation(m, x, true) <= 1e-9) best = std::min(best, m.objective(x));
        }

    MilpOptions opt;
    opt.gap_tol = 0;
    const Solution s = solve_milp(m, opt);
    if (best == kInfinity) {
      EXPECT_EQ(s.status, SolveStatus::Infeasible) << "trial " << trial;
    } else {
      ASSERT_EQ(s.status, SolveStatus::Optimal) << "trial " << trial;
      EXPECT_NEAR(s.objective, best, 1e-7) << "trial " << trial;
      EXPECT_LE(max_violation(m, s.values, true), 1e-6);
    }
  }
}

// Five variables with one strong-branching probe per node, so most children
// are created without a probed value; both rules must agree with enumeration.
TEST(BranchAndBound, BranchingRulesMatchEnumeration) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coef(-4, 8), cost(-9, 9), rhs(4, 18);
  for (int trial = 0; trial < 30; ++trial) {
    const int nv = 5;
    std::vector<Variable> vars;
    for (int j = 0; j < nv; ++j) vars.push_back({"x" + std::to_string(j), 0, 3, double(cost(rng)), true});
    std::vector<Constraint> rows;
    for (int i = 0; i < 4; ++i) {
      std::vector<double> c;
      for (int j = 0; j < nv; ++j) c.push_back(double(coef(rng)));
      rows.push_back(row({0, 1, 2, 3, 4}, c, -kInfinity, rhs(rng)));
    }
    const auto m = model_of(vars, rows);

    double best = kInfinity;
    std::vector<double> x(nv);
    for (int code = 0; code < 1024; ++code) {
      for (int j = 0, c = code; j < nv; ++j, c /= 4) x[j] = c % 4;
      if (max_violation(m, x, true) <= 1e-9) best = std::min(best, m.objective(x));
    }

    for (auto rule : {BranchingRule::Reliability, BranchingRule::MostFractional}) {
      MilpOptions opt;
      opt.gap_tol = 0;
      opt.branching = rule;
      opt.strong_branching_candidates = 1;
      const Solution s = solve_milp(m, opt);
      if (best == kInfinity) {
        EXPECT_EQ(s.status, SolveStatus::Infeasible) << "trial " << trial;
      } else {
        ASSERT_EQ(s.status, SolveStatus::Optimal) << "trial " << trial;
        EXPECT_NEAR(s.objective, best, 1e-7) << "trial " << trial;
      }
    }
  }
}

TEST(BranchAndBound, HeuristicAndIncumbentAreVerified) {
  // max x + y with 2x + 2y <= 3, integers -> 1.
  auto m = model_of({{"x", 0, 5, -1, true}, {"y", 0, 5, -1, true}}, {row({0, 1}, {2, 2}, -kInfinity, 3)});
  MilpOptions opt;
  opt.initial_incumbent = std::vector<double>{2, 2};  // infeasible, must be ignored
  opt.heuristic = [](const std::vector<double>&) { return std::optional<std::vector<double>>({0.5, 0.5}); };
  const Solution s = solve_milp(m, opt);
  ASSERT_EQ(s.status, SolveStatus::Optimal);
  EXPECT_NEAR(s.objective, -1, 1e-9);
}

TEST(BranchAndBound, NodeLimitWithoutIncumbentIsAnError) {
  auto m = model_of({{"x", 0, 5, -1, true}, {"y", 0, 5, -1, true}}, {row({0, 1}, {2, 2}, -kInfinity, 3)});
  MilpOptions opt;
  opt.node_limit = 0;
  const Solution s = solve_milp(m, opt);
  EXPECT_NE(s.status, SolveStatus::Optimal);
}

TEST(LpFormat, RoundTripPreservesModel) {
  auto m = model_of({{"x", 0, 10, 1.5, true}, {"y", -kInfinity, kInfinity, -1, false}, {"z", 2, 2, 3, false},
                     {"w", -3, kInfinity, 0, false}},
                    {row({0, 1}, {1, 1}, 2, 2), row({0, 1, 3}, {1, -1, 0.25}, -4, 7), row({1}, {-2}, -kInfinity, 9)});
  m.objective_offset = 12.5;
  const std::string text = to_lp_string(m);
  EXPECT_NE(text.find("Minimize"), std::string::npos);
  EXPECT_NE(text.find("General"), std::string::npos);
  const MilpModel back = read_lp_string(text);
  ASSERT_EQ(back.variables.size(), 4u);
  EXPECT_EQ(back.constraints.size(), 4u);  // ranged row split in two
  EXPECT_EQ(back.objective_offset, 12.5);
  for (std::size_t j = 0; j < 4; ++j) {
    EXPECT_EQ(back.variables[j].name, m.variables[j].name);
    EXPECT_EQ(back.variables[j].lower, m.variables[j].lower);
    EXPECT_EQ(back.variables[j].upper, m.variables[j].upper);
    EXPECT_EQ(back.variables[j].cost, m.variables[j].cost);
    EXPECT_EQ(back.variables[j].integer, m.variables[j].integer);
  }
  const Solution a = solve_milp(m), b = solve_milp(back);
  ASSERT_EQ(a.status, SolveStatus::Optimal);
  ASSERT_EQ(b.status, SolveStatus::Optimal);
  EXPECT_NEAR(a.objective, b.objective, 1e-9);
}

TEST(LpFormat, ParsesHandWrittenInput) {
  const MilpModel m = read_lp_string(
      "\\ a comment\nminimize\n obj: 2 x + 3 y - z\nsubject to\n c1: x + y >= 1\n c2: - x + z <= 4\n"
      "bounds\n y <= 3\n -inf <= z <= 5\ngenerals\n x\nend\n");
  ASSERT_EQ(m.variables.size(), 3u);
  EXPECT_EQ(m.find_variable("z"), 2);
  EXPECT_EQ(m.variables[2].lower, -kInfinity);
  EXPECT_EQ(m.variables[1].upper, 3);
  EXPECT_TRUE(m.variables[0].integer);
  EXPECT_EQ(m.constraints[1].coef[0], -1);
  EXPECT_THROW(read_lp_string("minimize\n obj: x\nsubject to\n c: x >= \nend\n"), ValidationError);
  EXPECT_THROW(read_lp_string("maximize\n obj: x\nend\n"), ValidationError);
}

TEST(SolutionFormat, RoundTrip) {
  auto m = model_of({{"x", 0, 10, 1, false}, {"y", 1, 1, 2, false}}, {row({0}, {1}, 3, kInfinity)});
  const Solution s = solve_lp(m);
  std::stringstream io;
  write_solution(s, m, io);
  const Solution back = read_solution(io, m);
  EXPECT_EQ(back.status, SolveStatus::Optimal);
  EXPECT_NEAR(back.objective, 5, 1e-12);
  std::stringstream partial("@status Optimal  # comment\nx 3\n");
  EXPECT_EQ(read_solution(partial, m).values[1], 1.0);  // fixed column filled in
  std::stringstream bad("@status Optimal\nq 3\n");
  EXPECT_THROW(read_solution(bad, m), ValidationError);
  std::stringstream inf("@status Infeasible\n");
  EXPECT_EQ(read_solution(inf, m).status, SolveStatus::Infeasible);
}
