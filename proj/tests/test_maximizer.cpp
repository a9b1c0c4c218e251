#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <gtest/gtest.h>

#include "mmr/bounds.hpp"
#include "mmr/rng.hpp"

namespace {

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

TEST(Projection, FeasibleAndIdempotent) {
  mmr::Rng rng(1);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + trial % 12;
    std::vector<double> y(n);
    for (auto& v : y) v = rng.uniform(-2, 3);
    const double total = rng.uniform(0, n);
    const auto x = mmr::project_capped_simplex(y, total);
    EXPECT_NEAR(sum(x), total, 1e-12);
    for (double v : x) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    const auto again = mmr::project_capped_simplex(x, total);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(again[i], x[i], 1e-14);
  }
}

TEST(Projection, IsTheNearestFeasiblePoint) {
  // Variational inequality: (y - x) . (z - x) <= 0 for every feasible z.
  mmr::Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 7;
    std::vector<double> y(n);
    for (auto& v : y) v = rng.uniform(-1, 2);
    const double total = rng.uniform(0.2, n - 0.2);
    const auto x = mmr::project_capped_simplex(y, total);
    for (int k = 0; k < 20; ++k) {
      std::vector<double> z(n);
      for (auto& v : z) v = rng.uniform(-1, 2);
      z = mmr::project_capped_simplex(z, total);
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += (y[i] - x[i]) * (z[i] - x[i]);
      EXPECT_LE(dot, 1e-12);
    }
  }
}

TEST(Projection, InteriorPointShiftsUniformly) {
  const std::vector<double> y{0.2, 0.4, 0.6};
  const auto x = mmr::project_capped_simplex(y, 1.5);
  EXPECT_NEAR(x[0], 0.3, 1e-15);
  EXPECT_NEAR(x[1], 0.5, 1e-15);
  EXPECT_NEAR(x[2], 0.7, 1e-15);
}

TEST(Projection, RejectsEmptySet) {
  const std::vector<double> y{0.5, 0.5};
  EXPECT_THROW(mmr::project_capped_simplex(y, 2.5), std::domain_error);
  EXPECT_THROW(mmr::project_capped_simplex(y, -0.1), std::domain_error);
  EXPECT_THROW(mmr::project_capped_simplex(std::vector<double>{}, 0.0), std::domain_error);
}

TEST(Maximizer, ReachesUniformMarginalsFromHundredStarts) {
  mmr::MaximizerConfig cfg;
  cfg.starts = 100;
  cfg.seed = 2024;
  const auto r = mmr::maximize_avg_ev(0.8, -0.8, 4, cfg);
  EXPECT_TRUE(r.converged);
  ASSERT_EQ(r.runs.size(), 100u);
  for (const auto& run : r.runs) {
    EXPECT_TRUE(run.converged);
    EXPECT_LE(run.gradient_norm, cfg.tol);
    for (double p : run.argmax.p0_up()) EXPECT_NEAR(p, 0.7, 1e-6);
    for (double p : run.argmax.p1_up()) EXPECT_NEAR(p, 0.3, 1e-6);
    EXPECT_LE(run.value, mmr::ev_max(0.2, -0.2) + 1e-12);
  }
  EXPECT_NEAR(r.value, mmr::ev_max(0.2, -0.2), 1e-12);
  EXPECT_GT(r.history_length, 0u);
}

TEST(Maximizer, StartingAtOptimumStaysThere) {
  const auto run = mmr::maximize_avg_ev_from(mmr::SpinMarginals::uniform(5, 0.62, 0.18));
  EXPECT_TRUE(run.converged);
  EXPECT_NEAR(run.value, mmr::ev_max(0.12, -0.32), 1e-15);
  for (double p : run.argmax.p0_up()) EXPECT_NEAR(p, 0.62, 1e-12);
}

TEST(Maximizer, PinnedTotalsGiveGhzValue) {
  for (int n : {2, 5, 9}) {
    const auto r = mmr::maximize_avg_ev(0.5 * n, -0.5 * n, n, {});
    EXPECT_EQ(r.value, 0.0);
    EXPECT_TRUE(r.converged);
    for (double p : r.argmax.p0_up()) EXPECT_EQ(p, 1.0);
    for (double p : r.argmax.p1_up()) EXPECT_EQ(p, 0.0);
  }
}

TEST(Maximizer, EqualTotalsReachOne) {
  // M0 = M1: every marginal set with p0j = p1j attains 1, uniform among them.
  mmr::MaximizerConfig cfg;
  cfg.starts = 10;
  for (int n : {3, 6}) {
    const auto r = mmr::maximize_avg_ev(0.0, 0.0, n, cfg);
    EXPECT_NEAR(r.value, 1.0, 1e-12);
    for (int j = 0; j < n; ++j) EXPECT_NEAR(r.argmax.p0_up()[j], r.argmax.p1_up()[j], 1e-5);
    EXPECT_LE(mmr::ev_gradient(mmr::SpinMarginals::uniform(n, 0.5, 0.5)).cwiseAbs().maxCoeff(),
              1e-15);
    EXPECT_EQ(mmr::avg_ev_general(mmr::SpinMarginals::uniform(n, 0.5, 0.5)), 1.0);
  }
}

TEST(Maximizer, RespectsConstraints) {
  mmr::MaximizerConfig cfg;
  cfg.starts = 5;
  cfg.seed = 9;
  const auto r = mmr::maximize_avg_ev(-1.3, 2.1, 7, cfg);
  EXPECT_NEAR(r.argmax.m0(), -1.3, 1e-10);
  EXPECT_NEAR(r.argmax.m1(), 2.1, 1e-10);
  for (double p : r.argmax.p0_up()) EXPECT_TRUE(p >= 0.0 && p <= 1.0);
  EXPECT_LE(r.value, mmr::ev_max(-1.3 / 7, 2.1 / 7) + 1e-12);
  EXPECT_NEAR(r.value, mmr::ev_max(-1.3 / 7, 2.1 / 7), 1e-12);
}

TEST(Maximizer, DeterministicForFixedSeed) {
  mmr::MaximizerConfig cfg;
  cfg.starts = 4;
  cfg.seed = 77;
  const auto a = mmr::maximize_avg_ev(0.4, -1.1, 5, cfg);
  const auto b = mmr::maximize_avg_ev(0.4, -1.1, 5, cfg);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.iterations, b.iterations);
  EXPECT_EQ(a.argmax.p0_up(), b.argmax.p0_up());
}

TEST(Maximizer, ReportsNonConvergenceInsteadOfThrowing) {
  mmr::MaximizerConfig cfg;
  cfg.max_iter = 1;
  cfg.tol = 1e-15;
  cfg.seed = 3;
  const auto r = mmr::maximize_avg_ev(0.8, -0.8, 6, cfg);
  EXPECT_FALSE(r.converged);
  EXPECT_LE(r.iterations, 1);
  EXPECT_GT(r.value, 0.0);
}

TEST(Maximizer, RejectsInfeasibleTotalsAndConfig) {
  EXPECT_THROW(mmr::maximize_avg_ev(2.5, 0.0, 4, {}), std::domain_error);
  EXPECT_THROW(mmr::maximize_avg_ev(0.0, -2.1, 4, {}), std::domain_error);
  EXPECT_THROW(mmr::maximize_avg_ev(0.0, 0.0, 0, {}), std::domain_error);
  mmr::MaximizerConfig cfg;
  cfg.starts = 0;
  EXPECT_THROW(mmr::maximize_avg_ev(0.0, 0.0, 3, cfg), std::domain_error);
}

}  // namespace
