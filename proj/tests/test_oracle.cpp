#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "mmr/bounds.hpp"
#include "mmr/oracle.hpp"
#include "mmr/rng.hpp"
#include "mmr/states.hpp"
#include "reference.hpp"

namespace {

using mmr::Complex;
using mmr::OracleEngine;

TEST(DenseJoint, SingleSpinDickePair) {
  const auto j = mmr::dense_joint(mmr::make_dicke_pair(1, 1, 0));
  ASSERT_EQ(j.amplitudes.size(), 4);
  EXPECT_EQ(j.n_spins, 1);
  EXPECT_NEAR(std::abs(j.amplitudes(0)), 0.0, 1e-16);
  EXPECT_NEAR(j.amplitudes(1).real(), M_SQRT1_2, 1e-16);
  EXPECT_NEAR(j.amplitudes(2).real(), M_SQRT1_2, 1e-16);
  EXPECT_NEAR(std::abs(j.amplitudes(3)), 0.0, 1e-16);
}

TEST(DenseJoint, GhzPair) {
  const auto j = mmr::dense_joint(mmr::make_ghz_pair(2));
  // |0 up up> = index 0b011, |1 down down> = index 0b100.
  for (Eigen::Index i = 0; i < 8; ++i) {
    EXPECT_NEAR(std::abs(j.amplitudes(i)), (i == 3 || i == 4) ? M_SQRT1_2 : 0.0, 1e-16) << i;
  }
}

TEST(DenseJoint, DickePairAmplitudeGroups) {
  const auto j = mmr::dense_joint(mmr::make_dicke_pair(4, 3, 1));
  int upper = 0, lower = 0;
  for (Eigen::Index i = 0; i < j.amplitudes.size(); ++i) {
    if (std::abs(j.amplitudes(i)) < 1e-15) continue;
    EXPECT_NEAR(std::abs(j.amplitudes(i)), 1.0 / std::sqrt(8.0), 1e-15);
    (i < 16 ? upper : lower) += 1;
  }
  EXPECT_EQ(upper, 4);
  EXPECT_EQ(lower, 4);
  EXPECT_NEAR(j.amplitudes.norm(), 1.0, 1e-12);
}

TEST(DenseJoint, MatchesReferenceConstruction) {
  const auto j = mmr::dense_joint(mmr::make_product_pair(6, 0.3, 1.1));
  const auto want = ref::joint(ref::product(std::vector<double>(6, 0.3)),
                               ref::product(std::vector<double>(6, 1.1)));
  EXPECT_LE((j.amplitudes - want).norm(), 1e-14);
}

TEST(DenseJoint, RejectsOversizedState) {
  EXPECT_THROW(mmr::dense_joint(mmr::make_dicke_pair(mmr::kJointMaxSpins + 1, 3, 1)),
               std::length_error);
}

TEST(OracleMeasure, DickePairAverage) {
  const auto m = mmr::oracle_measure_entropy(mmr::make_dicke_pair(4, 3, 1), 2);
  EXPECT_EQ(m.engine, OracleEngine::Dense);
  EXPECT_NEAR(m.average, 0.81128, 1e-5);
  EXPECT_NEAR(m.average, mmr::dicke_branch_report(4, 3, 1).avg, 1e-12);
  EXPECT_NEAR(mmr::oracle_average_entropy(mmr::make_dicke_pair(4, 3, 1)), m.average, 1e-12);
}

TEST(OracleMeasure, GhzPairLosesEverything) {
  for (int n = 2; n <= 10; ++n) {
    EXPECT_NEAR(mmr::oracle_average_entropy(mmr::make_ghz_pair(n)), 0.0, 1e-12);
  }
}

TEST(OracleMeasure, IdenticalProductPairIsUnentangled) {
  // psi0 = psi1 makes the joint state a product state; the exact value is 0.
  EXPECT_NEAR(mmr::oracle_average_entropy(mmr::make_product_pair(6, 0.7, 0.7)), 0.0, 1e-10);
}

TEST(OracleMeasure, DickeClosedFormAgreement) {
  for (int n = 2; n <= 8; ++n) {
    for (int k0 = 0; k0 <= n; ++k0) {
      for (int k1 = 0; k1 <= n; ++k1) {
        if (k0 == k1) continue;
        const auto r = mmr::dicke_branch_report(n, k0, k1);
        for (int spin : {1, n}) {
          const auto m = mmr::oracle_measure_entropy(mmr::make_dicke_pair(n, k0, k1), spin,
                                                     OracleEngine::Dense);
          EXPECT_NEAR(m.prob_up, r.prob_up, 1e-9);
          EXPECT_NEAR(m.e_up, r.e_up, 1e-9);
          EXPECT_NEAR(m.e_down, r.e_down, 1e-9);
        }
      }
    }
  }
}

TEST(OracleMeasure, MatchesReferenceOnGeneralProducts) {
  mmr::Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 5;
    std::vector<double> t0(n), t1(n);
    for (int j = 0; j < n; ++j) {
      t0[j] = rng.uniform(0, 3);
      t1[j] = rng.uniform(0, 3);
    }
    const mmr::MicroMacroState s(mmr::make_product(t0), mmr::make_product(t1));
    const auto v = ref::joint(ref::product(t0), ref::product(t1));
    for (int spin = 1; spin <= n; ++spin) {
      const auto m = mmr::oracle_measure_entropy(s, spin);
      const auto up = ref::measure(v, n, spin, true);
      EXPECT_NEAR(m.prob_up, up.prob, 1e-12);
      EXPECT_NEAR(m.e_up, up.entropy, 1e-10);
    }
  }
}

TEST(OracleLoss, DickePairNegativity) {
  EXPECT_NEAR(mmr::oracle_loss_negativity(mmr::make_dicke_pair(4, 3, 1), 1), std::sqrt(3.0) / 4.0,
              1e-10);
  EXPECT_NEAR(mmr::oracle_loss_negativity(mmr::make_dicke_pair(4, 3, 1), 1),
              mmr::negativity_symmetric(0.75, 0.25), 1e-10);
}

TEST(OracleLoss, NearOrthogonalProductsStayWithinTwiceTheOverlap) {
  const auto s = mmr::make_product_pair(10, 0.2, 1.2);
  const double ov = std::abs(s.component_overlap());
  EXPECT_NEAR(ov, std::pow(std::cos(1.0), 10), 1e-15);
  EXPECT_NEAR(ov, 0.00212, 1e-5);
  const double exact = mmr::oracle_loss_negativity(s, 3);
  const double closed = mmr::negativity_symmetric(std::pow(std::cos(0.2), 2), std::pow(std::cos(1.2), 2));
  EXPECT_LE(std::abs(exact - closed), 2.0 * ov);
}

TEST(OracleLoss, GhzPairIsSeparable) {
  for (int n = 2; n <= 10; ++n) EXPECT_NEAR(mmr::oracle_loss_negativity(mmr::make_ghz_pair(n), 1), 0.0, 1e-12);
}

TEST(OracleLoss, MatchesReference) {
  const auto v = ref::joint(ref::dicke(5, 2), ref::product(std::vector<double>(5, 0.4)), 0.6, 0.8);
  const mmr::MicroMacroState s(mmr::make_dicke(5, 2), mmr::make_symmetric_product(5, 0.4),
                               {Complex(0.6), Complex(0.8)}, 1.0);
  for (int spin = 1; spin <= 5; ++spin) {
    EXPECT_NEAR(mmr::oracle_loss_negativity(s, spin, OracleEngine::Dense),
                ref::negativity(ref::reduced_after_loss(v, 5, spin)), 1e-10);
  }
}

TEST(SectorEngine, AgreesWithDense) {
  mmr::Rng rng(8);
  for (int n = 2; n <= 10; ++n) {
    std::vector<Complex> c(n + 1);
    double norm = 0.0;
    for (auto& z : c) {
      z = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
      norm += std::norm(z);
    }
    for (auto& z : c) z /= std::sqrt(norm);
    const std::vector<mmr::MicroMacroState> states{
        mmr::make_dicke_pair(n, n - 1, 0),
        mmr::MicroMacroState(mmr::make_dicke_superposition(n, c), mmr::make_dicke(n, n / 2),
                             {Complex(0.6), Complex(0.8)}, 1.0),
        mmr::make_product_pair(n, 0.3, 1.3)};
    for (const auto& s : states) {
      const auto d = mmr::oracle_measure_entropy(s, 1, OracleEngine::Dense);
      const auto q = mmr::oracle_measure_entropy(s, 1, OracleEngine::Sector);
      EXPECT_EQ(q.engine, OracleEngine::Sector);
      EXPECT_NEAR(d.prob_up, q.prob_up, 1e-9);
      EXPECT_NEAR(d.e_up, q.e_up, 1e-9);
      EXPECT_NEAR(d.e_down, q.e_down, 1e-9);
      if (n <= 8) {
        EXPECT_NEAR(mmr::oracle_loss_negativity(s, 1, OracleEngine::Dense),
                    mmr::oracle_loss_negativity(s, 1, OracleEngine::Sector), 1e-9);
      }
    }
  }
}

TEST(SectorEngine, HandlesLargeDickePairs) {
  const auto s = mmr::make_dicke_pair(500, 375, 125);
  const auto m = mmr::oracle_measure_entropy(s, 1);
  EXPECT_EQ(m.engine, OracleEngine::Sector);
  EXPECT_NEAR(m.average, mmr::dicke_branch_report(500, 375, 125).avg, 1e-10);
  EXPECT_NEAR(mmr::oracle_loss_negativity(s, 1), mmr::negativity_symmetric(0.75, 0.25), 1e-10);
}

TEST(OracleCaps, DenseAndSectorLimits) {
  const auto big = mmr::make_dicke_pair(mmr::kOracleDenseMaxSpins + 1, 2, 0);
  EXPECT_THROW(mmr::oracle_measure_entropy(big, 1, OracleEngine::Dense), std::length_error);
  std::vector<double> theta(12, 0.3);
  theta[0] = 0.9;
  const mmr::MicroMacroState general(mmr::make_product(theta), mmr::make_symmetric_product(12, 1.2));
  EXPECT_THROW(mmr::oracle_measure_entropy(general, 1, OracleEngine::Sector), std::domain_error);
  EXPECT_THROW(mmr::oracle_measure_entropy(general, 1), std::length_error);
  EXPECT_THROW(mmr::oracle_loss_negativity(mmr::make_dicke_pair(3, 2, 0), 4), std::domain_error);
}

TEST(PartialTraceMiddle, RecoversOuterFactors) {
  mmr::Rng rng(4);
  auto random_density = [&](Eigen::Index d) {
    Eigen::MatrixXcd a(d, d);
    for (Eigen::Index i = 0; i < d * d; ++i) a(i / d, i % d) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
    Eigen::MatrixXcd rho = a * a.adjoint();
    return Eigen::MatrixXcd(rho / rho.trace());
  };
  const Eigen::MatrixXcd ra = random_density(2), rb = random_density(3), rc = random_density(4);
  Eigen::MatrixXcd abc(24, 24);
  for (Eigen::Index i = 0; i < 24; ++i) {
    for (Eigen::Index j = 0; j < 24; ++j) {
      abc(i, j) = ra(i / 12, j / 12) * rb(i / 4 % 3, j / 4 % 3) * rc(i % 4, j % 4);
    }
  }
  const auto ac = mmr::partial_trace_middle(abc, {2, 3, 4});
  ASSERT_EQ(ac.rows(), 8);
  for (Eigen::Index i = 0; i < 8; ++i) {
    for (Eigen::Index j = 0; j < 8; ++j) {
      EXPECT_NEAR(std::abs(ac(i, j) - ra(i / 4, j / 4) * rc(i % 4, j % 4)), 0.0, 1e-14);
    }
  }
  EXPECT_THROW(mmr::partial_trace_middle(abc, {2, 2, 4}), std::domain_error);
}

}  // namespace
