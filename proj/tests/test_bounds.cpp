#include <cmath>
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

#include "mmr/bounds.hpp"
#include "mmr/noise.hpp"
#include "mmr/oracle.hpp"
#include "mmr/rng.hpp"
#include "mmr/states.hpp"
#include "reference.hpp"

namespace {

const double kLn2 = std::numbers::ln2;

TEST(SymmetricBranchReport, EqualMarginalsGiveOneBit) {
  const auto r = mmr::symmetric_branch_report(0.5, 0.5);
  EXPECT_DOUBLE_EQ(r.e_up, 1.0);
  EXPECT_DOUBLE_EQ(r.e_down, 1.0);
  EXPECT_DOUBLE_EQ(r.avg, 1.0);
}

TEST(SymmetricBranchReport, GhzLimitLosesEverything) {
  const auto r = mmr::symmetric_branch_report(1.0, 0.0);
  EXPECT_EQ(r.e_up, 0.0);
  EXPECT_EQ(r.e_down, 0.0);
  EXPECT_EQ(r.avg, 0.0);
}

TEST(SymmetricBranchReport, SkewedPairMatchesSectorOracle) {
  const auto r = mmr::symmetric_branch_report(0.9, 0.1);
  EXPECT_NEAR(r.e_up, 0.46900, 1e-5);
  EXPECT_DOUBLE_EQ(r.prob_up, 0.5);
  EXPECT_NEAR(r.avg, 0.46900, 1e-5);
  const auto o = mmr::oracle_measure_entropy(mmr::make_dicke_pair(20, 18, 2), 1,
                                             mmr::OracleEngine::Sector);
  EXPECT_NEAR(r.avg, o.average, 1e-12);
  EXPECT_NEAR(r.e_up, o.e_up, 1e-12);
}

TEST(SymmetricBranchReport, EmptyUpBranchHasZeroEntropy) {
  const auto r = mmr::symmetric_branch_report(0.0, 0.0);
  EXPECT_EQ(r.prob_up, 0.0);
  EXPECT_EQ(r.e_up, 0.0);
  EXPECT_EQ(r.prob_down, 1.0);
}

TEST(SymmetricBranchReport, Invariants) {
  mmr::Rng rng(12);
  for (int i = 0; i < 2000; ++i) {
    const auto r = mmr::symmetric_branch_report(rng.uniform(), rng.uniform());
    EXPECT_EQ(r.prob_up + r.prob_down, 1.0);
    EXPECT_NEAR(r.avg, r.prob_up * r.e_up + r.prob_down * r.e_down, 1e-14);
    EXPECT_GE(r.avg, 0.0);
    EXPECT_LE(r.avg, 1.0);
  }
}

TEST(SymmetricBranchReport, RejectsOutOfRange) {
  EXPECT_THROW(mmr::symmetric_branch_report(1.1, 0.5), std::domain_error);
  EXPECT_THROW(mmr::symmetric_branch_report(0.5, -0.1), std::domain_error);
  EXPECT_THROW(mmr::negativity_symmetric(-0.5, 0.5), std::domain_error);
}

TEST(DickeBranchReport, AgreesWithRatioForm) {
  for (int n = 1; n <= 30; ++n) {
    for (int k0 = 0; k0 <= n; ++k0) {
      for (int k1 = 0; k1 <= n; ++k1) {
        const auto d = mmr::dicke_branch_report(n, k0, k1);
        const auto s = mmr::symmetric_branch_report(static_cast<double>(k0) / n,
                                                    static_cast<double>(k1) / n);
        // k0/N rounds before the ratio is formed, so agreement is to a few ulp.
        EXPECT_NEAR(d.e_up, s.e_up, 4e-15);
        EXPECT_NEAR(d.e_down, s.e_down, 4e-15);
        EXPECT_NEAR(d.avg, s.avg, 4e-15);
      }
    }
  }
}

TEST(DickeBranchReport, MatchesDenseMeasurement) {
  for (int n = 2; n <= 7; ++n) {
    for (int k0 = 0; k0 <= n; ++k0) {
      for (int k1 = 0; k1 <= n; ++k1) {
        if (k0 == k1) continue;
        const auto v = ref::joint(ref::dicke(n, k0), ref::dicke(n, k1));
        const auto up = ref::measure(v, n, 1, true);
        const auto down = ref::measure(v, n, 1, false);
        const auto r = mmr::dicke_branch_report(n, k0, k1);
        EXPECT_NEAR(r.prob_up, up.prob, 1e-14);
        EXPECT_NEAR(r.e_up, up.entropy, 1e-12);
        EXPECT_NEAR(r.e_down, down.entropy, 1e-12);
      }
    }
  }
}

TEST(NegativitySymmetric, Examples) {
  for (double p : {0.0, 0.1, 0.5, 0.93, 1.0}) EXPECT_DOUBLE_EQ(mmr::negativity_symmetric(p, p), 0.5);
  EXPECT_EQ(mmr::negativity_symmetric(1.0, 0.0), 0.0);
  EXPECT_NEAR(mmr::negativity_symmetric(0.9, 0.1), 0.3, 1e-15);
}

TEST(NegativitySymmetric, MatchesLossOnSeparatedDickePairs) {
  // Dicke pairs two or more excitations apart keep the four remainders orthogonal.
  for (int n = 4; n <= 8; ++n) {
    for (int k0 = 0; k0 <= n; ++k0) {
      for (int k1 = 0; k1 + 2 <= k0; ++k1) {
        const auto v = ref::joint(ref::dicke(n, k0), ref::dicke(n, k1));
        const double want = ref::negativity(ref::reduced_after_loss(v, n, 1));
        EXPECT_NEAR(mmr::negativity_symmetric(static_cast<double>(k0) / n,
                                              static_cast<double>(k1) / n),
                    want, 1e-12);
      }
    }
  }
}

TEST(Series, EntropyExamples) {
  EXPECT_EQ(mmr::series_ev(0.0, 0.37), 1.0);
  EXPECT_NEAR(mmr::series_ev(0.2, 0.0), 0.97095, 1e-5);
  EXPECT_LT(std::abs(mmr::series_ev(0.2, 0.0) - mmr::symmetric_branch_report(0.6, 0.4).avg), 1e-4);
  EXPECT_NEAR(mmr::series_ev(1.0, 0.0), 1.0 - (7.0 / 6.0) / (2.0 * kLn2), 1e-15);
  EXPECT_NEAR(mmr::series_ev(1.0, 0.0), 0.158428, 1e-6);
}

TEST(Series, NegativityExamples) {
  EXPECT_EQ(mmr::series_neg(0.0, -0.3), 0.5);
  EXPECT_NEAR(mmr::series_neg(0.2, 0.0), 0.4899, 1e-12);
  EXPECT_LT(std::abs(mmr::series_neg(0.2, 0.0) - std::sqrt(0.24)), 1e-5);
  EXPECT_NEAR(mmr::series_neg(0.4, 0.1), 0.4568, 1e-12);
  EXPECT_LT(std::abs(mmr::series_neg(0.4, 0.1) - mmr::negativity_symmetric(0.8, 0.4)), 1e-3);
}

TEST(Series, QuadraticCoefficients) {
  for (double d : {0.1, 0.05, 0.025}) {
    const double ev = (1.0 - mmr::symmetric_branch_report(0.5 + d / 2, 0.5 - d / 2).avg) / (d * d);
    EXPECT_NEAR(ev / (1.0 / (2.0 * kLn2)), 1.0, 0.01) << "d=" << d;
    const double neg = (0.5 - mmr::negativity_symmetric(0.5 + d / 2, 0.5 - d / 2)) / (d * d);
    EXPECT_NEAR(neg / 0.25, 1.0, 0.01) << "d=" << d;
  }
}

TEST(AvgEvGeneral, UniformReducesToSymmetricReport) {
  mmr::Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const int n = 2 + i % 9;
    const double p0 = rng.uniform(), p1 = rng.uniform();
    EXPECT_NEAR(mmr::avg_ev_general(mmr::SpinMarginals::uniform(n, p0, p1)),
                mmr::symmetric_branch_report(p0, p1).avg, 1e-14);
  }
}

TEST(AvgEvGeneral, TwoSpinMixedExample) {
  const mmr::SpinMarginals m({1.0, 0.5}, {0.0, 0.5});
  EXPECT_NEAR(mmr::avg_ev_general(m), 0.5, 1e-15);
  // Product components with these marginals: theta = 0 or pi/2 on spin 1, pi/4 on spin 2.
  const double q = std::numbers::pi / 4;
  const mmr::MicroMacroState s(mmr::make_product({0.0, q}), mmr::make_product({std::numbers::pi / 2, q}));
  const auto dense = ref::joint(ref::product({0.0, q}), ref::product({std::numbers::pi / 2, q}));
  double brute = 0.0;
  for (int j = 1; j <= 2; ++j) {
    for (bool up : {true, false}) {
      const auto b = ref::measure(dense, 2, j, up);
      brute += 0.5 * b.prob * b.entropy;
    }
  }
  EXPECT_NEAR(brute, 0.5, 1e-12);
  EXPECT_NEAR(mmr::oracle_average_entropy(s, mmr::OracleEngine::Dense), 0.5, 1e-12);
}

TEST(AvgEvGeneral, EqualComponentMarginalsGiveOne) {
  mmr::Rng rng(6);
  for (int i = 0; i < 50; ++i) {
    std::vector<double> p(3 + i % 5);
    for (auto& x : p) x = rng.uniform();
    EXPECT_NEAR(mmr::avg_ev_general(mmr::SpinMarginals(p, p)), 1.0, 1e-15);
  }
}

TEST(EvGradient, VanishesAtUniformMarginals) {
  for (int n = 2; n <= 9; ++n) {
    for (double p0 : {0.2, 0.55, 0.9}) {
      const auto g = mmr::ev_gradient(mmr::SpinMarginals::uniform(n, p0, 0.35));
      ASSERT_EQ(g.size(), 2 * n - 2);
      EXPECT_LE(g.cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

double fd_partial(const std::vector<double>& p0, const std::vector<double>& p1, int coord, double h) {
  // Coordinate coord < n-1 moves p0[coord] against p0[n-1]; otherwise p1 likewise.
  const int n = static_cast<int>(p0.size());
  auto eval = [&](double step) {
    auto a = p0, b = p1;
    auto& v = coord < n - 1 ? a : b;
    const int j = coord < n - 1 ? coord : coord - (n - 1);
    v[j] += step;
    v[n - 1] -= step;
    return mmr::avg_ev_general(mmr::SpinMarginals(a, b));
  };
  return (eval(h) - eval(-h)) / (2 * h);
}

TEST(EvGradient, MatchesFiniteDifferences) {
  const std::vector<double> p0{0.7, 0.6, 0.5}, p1{0.3, 0.3, 0.3};
  const auto g = mmr::ev_gradient(mmr::SpinMarginals(p0, p1));
  for (int c = 0; c < 4; ++c) EXPECT_NEAR(g[c], fd_partial(p0, p1, c, 1e-6), 1e-6) << c;

  mmr::Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 6;
    std::vector<double> a(n), b(n);
    for (int j = 0; j < n; ++j) {
      a[j] = rng.uniform(0.05, 0.95);
      b[j] = rng.uniform(0.05, 0.95);
    }
    const auto gr = mmr::ev_gradient(mmr::SpinMarginals(a, b));
    for (int c = 0; c < 2 * n - 2; ++c) EXPECT_NEAR(gr[c], fd_partial(a, b, c, 1e-6), 1e-6);
  }
}

TEST(EvGradient, UniformPointIsLocalMaximum) {
  const double base = mmr::avg_ev_general(mmr::SpinMarginals::uniform(2, 0.6, 0.4));
  for (double eps : {1e-3, -1e-3}) {
    EXPECT_LT(mmr::avg_ev_general(mmr::SpinMarginals({0.6 + eps, 0.6 - eps}, {0.4, 0.4})), base);
    EXPECT_LT(mmr::avg_ev_general(mmr::SpinMarginals({0.6, 0.6}, {0.4 + eps, 0.4 - eps})), base);
  }
}

TEST(EvGradient, RejectsBoundaryEntries) {
  EXPECT_THROW(mmr::ev_gradient(mmr::SpinMarginals({1.0, 0.5}, {0.2, 0.3})), std::domain_error);
  EXPECT_THROW(mmr::ev_gradient(mmr::SpinMarginals({0.4, 0.5}, {0.0, 0.3})), std::domain_error);
}

TEST(HessianSpectrum, FourSpinExample) {
  const auto h = mmr::hessian_spectrum(4, 0.75, 0.25);
  EXPECT_NEAR(h.a, 10.0 / 3.0, 1e-13);
  EXPECT_NEAR(h.b, 10.0 / 3.0, 1e-13);
  EXPECT_NEAR(h.c, -2.0, 1e-13);
  EXPECT_EQ(h.total_multiplicity(), 6);
  EXPECT_TRUE(h.all_negative);
  std::vector<std::pair<double, int>> want{{-(8.0 / 3.0) / (4 * kLn2), 2},
                                           {-(32.0 / 3.0) / (4 * kLn2), 2},
                                           {-4 * (8.0 / 3.0) / (4 * kLn2), 1},
                                           {-4 * (32.0 / 3.0) / (4 * kLn2), 1}};
  ASSERT_EQ(h.eigenvalues.size(), want.size());
  for (const auto& [value, mult] : want) {
    bool found = false;
    for (const auto& [v, m] : h.eigenvalues) found = found || (m == mult && std::abs(v - value) < 1e-12);
    EXPECT_TRUE(found) << value << " x" << mult;
  }
  EXPECT_NEAR(want[0].first, -0.961797, 1e-6);
  EXPECT_NEAR(want[1].first, -3.847187, 1e-6);
  EXPECT_NEAR(want[3].first, -15.388747, 1e-6);
}

TEST(HessianSpectrum, AssembledMatrixHasListedSpectrum) {
  for (int n = 2; n <= 8; ++n) {
    for (auto [p0, p1] : {std::pair{0.6, 0.4}, {0.9, 0.2}, {0.3, 0.7}, {0.15, 0.05}}) {
      const auto h = mmr::hessian_spectrum(n, p0, p1);
      EXPECT_EQ(h.total_multiplicity(), 2 * n - 2);
      std::vector<double> listed;
      for (const auto& [v, m] : h.eigenvalues) listed.insert(listed.end(), m, v);
      std::sort(listed.begin(), listed.end());
      const Eigen::MatrixXd hm = mmr::assemble_hessian(n, p0, p1);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hm);
      ASSERT_EQ(static_cast<Eigen::Index>(listed.size()), es.eigenvalues().size());
      for (std::size_t i = 0; i < listed.size(); ++i) {
        EXPECT_NEAR(listed[i], es.eigenvalues()[static_cast<Eigen::Index>(i)], 1e-10);
      }
    }
  }
}

TEST(HessianSpectrum, EqualMarginalsHaveZeroEigenvalues) {
  for (int n = 3; n <= 6; ++n) {
    const auto h = mmr::hessian_spectrum(n, 0.3, 0.3);
    EXPECT_NEAR(h.c * h.c, h.a * h.b, 1e-10 * h.a * h.b);
    int zeros = 0;
    for (const auto& [v, m] : h.eigenvalues) {
      if (std::abs(v) < 1e-9) zeros += m;
    }
    EXPECT_EQ(zeros, n - 1);
    EXPECT_FALSE(h.all_negative);
  }
}

TEST(HessianSpectrum, NegativeInteriorIncludingAntiDiagonal) {
  EXPECT_TRUE(mmr::hessian_spectrum(3, 0.6, 0.4).all_negative);
  for (double p : {0.1, 0.3, 0.45, 0.8}) {
    const auto h = mmr::hessian_spectrum(5, p, 1.0 - p);
    for (const auto& [v, m] : h.eigenvalues) EXPECT_LT(v, -1e-12);
  }
}

TEST(HessianSpectrum, RejectsBoundary) {
  EXPECT_THROW(mmr::hessian_spectrum(4, 0.0, 0.5), std::domain_error);
  EXPECT_THROW(mmr::hessian_spectrum(4, 0.5, 1.0), std::domain_error);
}

TEST(HessianGap, CorrectedFormMatchesDirectEvaluation) {
  for (int i = 1; i < 20; ++i) {
    for (int j = 1; j < 20; ++j) {
      const double p0 = i / 20.0, p1 = j / 20.0;
      const double direct = mmr::hessian_gap_direct(p0, p1);
      EXPECT_NEAR(mmr::hessian_gap_corrected(p0, p1), direct, 1e-9 * (1.0 + std::abs(direct)));
    }
  }
}

TEST(HessianGap, PrintedFormVanishesWhereGapDoesNot) {
  EXPECT_EQ(mmr::hessian_gap_printed(0.75, 0.25), 0.0);
  EXPECT_NEAR(mmr::hessian_gap_direct(0.75, 0.25), 256.0 / 9.0, 1e-10);
  EXPECT_NEAR(mmr::hessian_gap_corrected(0.75, 0.25), 256.0 / 9.0, 1e-10);
}

TEST(EvMax, Examples) {
  EXPECT_NEAR(mmr::ev_max(0.2, -0.2), 0.88129, 1e-5);
  EXPECT_NEAR(mmr::ev_max(0.2, -0.2), mmr::symmetric_branch_report(0.7, 0.3).avg, 1e-15);
  EXPECT_DOUBLE_EQ(mmr::ev_max(0.1, 0.1), 1.0);
  EXPECT_EQ(mmr::ev_max(0.5, -0.5), 0.0);
  EXPECT_THROW(mmr::ev_max(0.6, 0.0), std::domain_error);
}

TEST(EvMax, DominatesRandomMarginals) {
  mmr::Rng rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 3 + trial % 6;
    std::vector<double> a(n), b(n);
    for (int j = 0; j < n; ++j) {
      a[j] = rng.uniform();
      b[j] = rng.uniform();
    }
    const mmr::SpinMarginals m(a, b);
    EXPECT_LE(mmr::avg_ev_general(m), mmr::ev_max(m.m0() / n, m.m1() / n) + 1e-12);
  }
}

}  // namespace
