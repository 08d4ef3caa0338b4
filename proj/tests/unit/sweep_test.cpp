#include <sstream>

#include <gtest/gtest.h>

#include "pcity/sweep.hpp"

using namespace pcity;

TEST(Grid, Cardinality) {
  SweepSpec s;
  s.step = 0.025;
  EXPECT_EQ(sweep_grid(s).size(), 741u);
  s.step = 0.1;
  EXPECT_EQ(sweep_grid(s).size(), 55u);
  s.min_beta = 0.05;
  EXPECT_LT(sweep_grid(s).size(), 55u);
  s.step = 0;
  EXPECT_THROW(sweep_grid(s), ValidationError);
}

TEST(Grid, OrderAndInvariants) {
  SweepSpec s;
  s.step = 0.025;
  const auto grid = sweep_grid(s);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto& g = grid[k];
    EXPECT_GT(g.beta, 0);
    EXPECT_LT(g.beta, 1);
    EXPECT_NEAR(g.alpha + g.beta + g.gamma, 1.0, 1e-12);
    CityParams p;
    p.alpha = g.alpha;
    p.beta = g.beta;
    p.gamma = g.gamma;
    EXPECT_NO_THROW(p.validate());
    if (k > 0) {
      const auto& h = grid[k - 1];
      EXPECT_TRUE(h.alpha < g.alpha || (h.alpha == g.alpha && h.gamma < g.gamma));
    }
  }
  EXPECT_EQ(grid.front().alpha, 0.025);
  EXPECT_EQ(grid[1].gamma, 0.05);
}

TEST(Fielbaum, Mu) {
  EXPECT_NEAR(fielbaum_mu(10.65, 1.48), 0.87799, 1e-5);
  EXPECT_DOUBLE_EQ(fielbaum_mu(1, 1), 0.5);
  EXPECT_THROW(fielbaum_mu(1, 0), ValidationError);
  EXPECT_THROW(fielbaum_mu(-1, 1), ValidationError);
}

namespace {

// Strips the two timing columns and the total-time footer.
std::string without_timing(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.rfind("# total_ms", 0) == 0) continue;
    if (line[0] != '#') {
      for (int k = 0; k < 2; ++k) line.resize(line.rfind(','));
    }
    out += line + "\n";
  }
  return out;
}

SweepSpec small_spec(int jobs) {
  SweepSpec s;
  s.base.n = 4;
  s.base.Y = 800;
  s.base.K = 50;
  s.step = 0.3;
  s.jobs = jobs;
  return s;
}

}  // namespace

TEST(Sweep, DeterministicAcrossWorkerCounts) {
  const auto a = run_sweep(small_spec(1));
  const auto b = run_sweep(small_spec(3));
  ASSERT_EQ(a.size(), 10u);
  std::ostringstream ca, cb;
  write_sweep_csv(a, small_spec(1), ca);
  write_sweep_csv(b, small_spec(3), cb);
  EXPECT_EQ(without_timing(ca.str()), without_timing(cb.str()));
  EXPECT_EQ(ca.str().substr(0, ca.str().find('\n')), kSweepCsvHeader);
  for (const auto& r : a) {
    EXPECT_TRUE(r.error.empty()) << r.error;
    EXPECT_LE(r.gamma_rel, r.bound_cn_ag + 1e-6);
    EXPECT_LE(r.opt_alpp, r.opt_alpps * (1 + 1e-9));
  }
}

TEST(Sweep, ErrorsStayInTheirRow) {
  CityParams p = small_spec(1).base;
  p.alpha = 0.5;
  p.gamma = 0.6;  // beta < 0
  p.beta = -0.1;
  const SweepRow r = sweep_row(p, {});
  EXPECT_EQ(r.classification, "error");
  EXPECT_FALSE(r.error.empty());
  std::ostringstream out;
  write_sweep_csv({r}, SweepSpec{}, out);
  EXPECT_NE(out.str().find("# errors 1"), std::string::npos);
  EXPECT_NE(out.str().find("# error alpha=0.5"), std::string::npos);
}

TEST(Sweep, MuZeroIsAlwaysSymmetric) {
  SweepSpec s = small_spec(1);
  s.base.mu = 0;
  for (const auto& r : run_sweep(s)) EXPECT_EQ(r.classification, "symmetric");
}
