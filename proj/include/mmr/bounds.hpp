#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mmr/states.hpp"

namespace mmr {

/// Branch statistics of a QA-symmetric pair after measuring one spin, with the
/// conditional components assumed orthogonal. Entropies are in bits.
struct SymmetricBranchReport {
  double p0_up = 0.0;
  double p1_up = 0.0;
  double e_up = 0.0;
  double e_down = 0.0;
  double prob_up = 0.0;
  double prob_down = 0.0;
  double avg = 0.0;
};

SymmetricBranchReport symmetric_branch_report(double p0_up, double p1_up);

/// The same report for a Dicke pair, computed from the integer ratios
/// k0/(k0+k1) and (N-k0)/(2N-k0-k1) directly.
SymmetricBranchReport dicke_branch_report(int n, int k0, int k1);

/// Post-loss negativity of a QA-symmetric pair:
/// (sqrt(p0 p1) + sqrt((1-p0)(1-p1))) / 2.
double negativity_symmetric(double p0_up, double p1_up);

/// Small-distinctness expansions in dm = dM/N and mbar = Mbar/N.
double series_ev(double dm_over_n, double mbar_over_n);
double series_neg(double dm_over_n, double mbar_over_n);

/// Average post-measurement entropy (1/N) sum_j E_j over arbitrary marginals.
double avg_ev_general(const SpinMarginals& m);

/// Gradient of avg_ev_general in the 2N-2 independent coordinates
/// (p0_1..p0_{N-1}, p1_1..p1_{N-1}); p0_N and p1_N absorb the fixed totals.
/// Entries must lie strictly inside (0,1).
Eigen::VectorXd ev_gradient(const SpinMarginals& m);

/// Hessian data at uniform marginals (p0, p1). The eigenvalue list is that of
/// the matrix -1/(2 ln 2) [[a(I+J), c(I+J)], [c(I+J), b(I+J)]], i.e. the
/// Hessian of N * avg_ev_general in the independent coordinates.
struct HessianSpectrum {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  std::vector<std::pair<double, int>> eigenvalues;  // (value, multiplicity)
  bool all_negative = false;

  int total_multiplicity() const;
};

HessianSpectrum hessian_spectrum(int n, double p0, double p1);

/// The (2N-2)x(2N-2) matrix whose spectrum hessian_spectrum lists.
Eigen::MatrixXd assemble_hessian(int n, double p0, double p1);

/// (a+b)^2 - ((a-b)^2 + 4c^2) evaluated from a, b, c.
double hessian_gap_direct(double p0, double p1);
/// Closed form with the (1-p0-p1)^2 factor, as printed in the literature.
double hessian_gap_printed(double p0, double p1);
/// Closed form obtained by expanding ab - c^2.
double hessian_gap_corrected(double p0, double p1);

/// Upper bound on avg_ev_general at fixed M0/N, M1/N (attained at uniform marginals).
double ev_max(double m0_over_n, double m1_over_n);

struct MaximizerConfig {
  double tol = 1e-10;
  int max_iter = 100000;
  std::uint64_t seed = 0;
  int starts = 1;
};

struct MaximizerRun {
  SpinMarginals argmax;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  double gradient_norm = 0.0;  // ||P(x + g) - x|| at the final iterate
};

struct MaximizerResult {
  SpinMarginals argmax;
  double value = 0.0;
  int iterations = 0;          // iterations of the best run
  bool converged = false;      // every start converged
  double gradient_norm = 0.0;  // of the best run
  std::size_t history_length = 0;  // iterates accepted over all starts
  std::vector<MaximizerRun> runs;
};

/// Projected gradient ascent of avg_ev_general subject to sum(p0) = m0 + n/2,
/// sum(p1) = m1 + n/2 and the unit box, from cfg.starts seeded random points.
/// Non-convergence is reported through `converged`, not thrown.
MaximizerResult maximize_avg_ev(double m0, double m1, int n, const MaximizerConfig& cfg = {});

/// Single run from a given feasible (or to-be-projected) starting point.
MaximizerRun maximize_avg_ev_from(const SpinMarginals& start, const MaximizerConfig& cfg = {});

/// Euclidean projection of y onto {x : lo <= x_i <= hi, sum x = total}.
std::vector<double> project_capped_simplex(std::span<const double> y, double total, double lo = 0.0,
                                           double hi = 1.0);

}  // namespace mmr
