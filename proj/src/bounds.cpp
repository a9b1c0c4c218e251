#include "mmr/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "detail/objective.hpp"
#include "mmr/measures.hpp"

namespace mmr {

using detail::partial_p0;
using detail::partial_p1;
using detail::spin_term;

namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error(std::string(name) + " = " + std::to_string(p) + " outside [0,1]");
  }
}

void check_interior(double p, const char* name) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error(std::string(name) + " = " + std::to_string(p) + " not inside (0,1)");
  }
}

struct HessianCoefficients {
  double a, b, c;
};

HessianCoefficients coefficients(double p0, double p1) {
  const double s = p0 + p1;
  const double t = 2.0 - s;
  return {p1 / (p0 * s) + (1.0 - p1) / ((1.0 - p0) * t),
          p0 / (p1 * s) + (1.0 - p0) / ((1.0 - p1) * t), -1.0 / s - 1.0 / t};
}

}  // namespace

SymmetricBranchReport symmetric_branch_report(double p0_up, double p1_up) {
  check_probability(p0_up, "p0_up");
  check_probability(p1_up, "p1_up");
  SymmetricBranchReport r;
  r.p0_up = p0_up;
  r.p1_up = p1_up;
  const double s = p0_up + p1_up;
  // Sum the complements separately: 2 - s loses the exact zero when p1 = 1.
  const double q0 = 1.0 - p0_up;
  const double t = q0 + (1.0 - p1_up);
  r.prob_up = 0.5 * s;
  r.prob_down = 1.0 - r.prob_up;
  r.e_up = s > 0.0 ? binary_entropy(std::min(1.0, p0_up / s)) : 0.0;
  r.e_down = t > 0.0 ? binary_entropy(std::min(1.0, q0 / t)) : 0.0;
  r.avg = r.prob_up * r.e_up + r.prob_down * r.e_down;
  return r;
}

SymmetricBranchReport dicke_branch_report(int n, int k0, int k1) {
  if (n < 1 || k0 < 0 || k0 > n || k1 < 0 || k1 > n) {
    throw std::domain_error("Dicke pair outside 0 <= k <= n");
  }
  SymmetricBranchReport r;
  r.p0_up = static_cast<double>(k0) / n;
  r.p1_up = static_cast<double>(k1) / n;
  const int up = k0 + k1;
  const int down = 2 * n - up;
  r.prob_up = static_cast<double>(up) / (2.0 * n);
  r.prob_down = 1.0 - r.prob_up;
  r.e_up = up > 0 ? binary_entropy(static_cast<double>(k0) / up) : 0.0;
  r.e_down = down > 0 ? binary_entropy(static_cast<double>(n - k0) / down) : 0.0;
  r.avg = r.prob_up * r.e_up + r.prob_down * r.e_down;
  return r;
}

double negativity_symmetric(double p0_up, double p1_up) {
  check_probability(p0_up, "p0_up");
  check_probability(p1_up, "p1_up");
  return 0.5 * (std::sqrt(p0_up * p1_up) + std::sqrt((1.0 - p0_up) * (1.0 - p1_up)));
}

double series_ev(double dm, double mbar) {
  return 1.0 - dm * dm / (2.0 * M_LN2) * (1.0 + 4.0 * mbar * mbar + dm * dm / 6.0);
}

double series_neg(double dm, double mbar) {
  return 0.5 - dm * dm * (0.25 + mbar * mbar + dm * dm / 16.0);
}

double avg_ev_general(const SpinMarginals& m) {
  double acc = 0.0;
  for (int j = 0; j < m.size(); ++j) acc += spin_term(m.p0_up()[j], m.p1_up()[j]);
  return acc / m.size();
}

Eigen::VectorXd ev_gradient(const SpinMarginals& m) {
  const int n = m.size();
  if (n < 2) throw std::domain_error("gradient needs at least two spins");
  for (int j = 0; j < n; ++j) {
    check_interior(m.p0_up()[j], "p0_up");
    check_interior(m.p1_up()[j], "p1_up");
  }
  const auto& p0 = m.p0_up();
  const auto& p1 = m.p1_up();
  const double last0 = partial_p0(p0[n - 1], p1[n - 1]);
  const double last1 = partial_p1(p0[n - 1], p1[n - 1]);
  Eigen::VectorXd g(2 * (n - 1));
  for (int j = 0; j + 1 < n; ++j) {
    g[j] = (partial_p0(p0[j], p1[j]) - last0) / n;
    g[n - 1 + j] = (partial_p1(p0[j], p1[j]) - last1) / n;
  }
  return g;
}

int HessianSpectrum::total_multiplicity() const {
  int total = 0;
  for (const auto& [value, mult] : eigenvalues) total += mult;
  return total;
}

HessianSpectrum hessian_spectrum(int n, double p0, double p1) {
  if (n < 2) throw std::domain_error("Hessian needs at least two spins");
  check_interior(p0, "p0");
  check_interior(p1, "p1");
  const auto [a, b, c] = coefficients(p0, p1);
  HessianSpectrum h{a, b, c, {}, false};
  const double root = std::sqrt((a - b) * (a - b) + 4.0 * c * c);
  const double small = a + b - root;
  const double large = a + b + root;
  const double unit = -1.0 / (4.0 * M_LN2);
  if (n > 2) {
    h.eigenvalues.emplace_back(unit * small, n - 2);
    h.eigenvalues.emplace_back(unit * large, n - 2);
  }
  h.eigenvalues.emplace_back(unit * n * small, 1);
  h.eigenvalues.emplace_back(unit * n * large, 1);
  h.all_negative = true;
  for (const auto& [value, mult] : h.eigenvalues) {
    if (!(value < 0.0)) h.all_negative = false;
  }
  return h;
}

Eigen::MatrixXd assemble_hessian(int n, double p0, double p1) {
  if (n < 2) throw std::domain_error("Hessian needs at least two spins");
  check_interior(p0, "p0");
  check_interior(p1, "p1");
  const auto [a, b, c] = coefficients(p0, p1);
  const int m = n - 1;
  const Eigen::MatrixXd pattern =
      Eigen::MatrixXd::Identity(m, m) + Eigen::MatrixXd::Ones(m, m);
  Eigen::MatrixXd h(2 * m, 2 * m);
  h.topLeftCorner(m, m) = a * pattern;
  h.topRightCorner(m, m) = c * pattern;
  h.bottomLeftCorner(m, m) = c * pattern;
  h.bottomRightCorner(m, m) = b * pattern;
  return -h / (2.0 * M_LN2);
}

double hessian_gap_direct(double p0, double p1) {
  check_interior(p0, "p0");
  check_interior(p1, "p1");
  const auto [a, b, c] = coefficients(p0, p1);
  return (a + b) * (a + b) - ((a - b) * (a - b) + 4.0 * c * c);
}

double hessian_gap_printed(double p0, double p1) {
  check_interior(p0, "p0");
  check_interior(p1, "p1");
  const double d = p0 - p1;
  const double e = 1.0 - p0 - p1;
  return 4.0 * d * d * e * e /
         ((1.0 - p0) * p0 * (1.0 - p1) * p1 * (2.0 - p0 - p1) * (p0 + p1));
}

double hessian_gap_corrected(double p0, double p1) {
  check_interior(p0, "p0");
  check_interior(p1, "p1");
  const double d = p0 - p1;
  return 4.0 * d * d / ((1.0 - p0) * p0 * (1.0 - p1) * p1 * (2.0 - p0 - p1) * (p0 + p1));
}

double ev_max(double m0_over_n, double m1_over_n) {
  if (!(std::abs(m0_over_n) <= 0.5) || !(std::abs(m1_over_n) <= 0.5)) {
    throw std::domain_error("M/N must lie in [-1/2, 1/2]");
  }
  return symmetric_branch_report(0.5 + m0_over_n, 0.5 + m1_over_n).avg;
}

}  // namespace mmr
