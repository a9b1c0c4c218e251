#include "mmr/measures.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

namespace mmr {

namespace {

double plogp(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

}  // namespace

double binary_entropy(double p) { return plogp(p) + plogp(1.0 - p); }

EntropyValue qubit_entropy(const Eigen::Matrix2cd& rho) {
  // Closed-form eigenvalues of a 2x2 Hermitian matrix.
  const double a = rho(0, 0).real();
  const double d = rho(1, 1).real();
  const double off = std::abs(rho(0, 1));
  const double half_gap = std::sqrt(0.25 * (a - d) * (a - d) + off * off);
  const double mid = 0.5 * (a + d);
  const double l1 = std::max(0.0, mid + half_gap);
  const double l2 = std::max(0.0, mid - half_gap);
  return {plogp(l1) + plogp(l2)};
}

EntropyValue entanglement_entropy(const Eigen::VectorXcd& joint) {
  if (joint.size() < 2 || joint.size() % 2 != 0) {
    throw std::domain_error("joint vector must split as qubit (x) rest");
  }
  if (std::abs(joint.squaredNorm() - 1.0) > 1e-10) {
    throw std::domain_error("joint state is not normalized");
  }
  const Eigen::Index half = joint.size() / 2;
  const auto v0 = joint.head(half);
  const auto v1 = joint.tail(half);
  Eigen::Matrix2cd rho;
  rho(0, 0) = v0.squaredNorm();
  rho(1, 1) = v1.squaredNorm();
  rho(0, 1) = v1.dot(v0);  // sum_r v0[r] conj(v1[r])
  rho(1, 0) = std::conj(rho(0, 1));
  return qubit_entropy(rho);
}

Eigen::Matrix2cd qubit_reduced_state(const MicroMacroState& s) {
  const auto [a0, a1] = s.qubit_amplitudes();
  Eigen::Matrix2cd rho;
  rho(0, 0) = std::norm(a0);
  rho(1, 1) = std::norm(a1);
  // <0|rho|1> = a0 conj(a1) <psi1|psi0>
  rho(0, 1) = a0 * std::conj(a1) * std::conj(s.component_overlap());
  rho(1, 0) = std::conj(rho(0, 1));
  return rho;
}

EntropyValue entanglement_entropy(const MicroMacroState& s) {
  return qubit_entropy(qubit_reduced_state(s));
}

const char* to_string(DensityBasis b) {
  switch (b) {
    case DensityBasis::DenseComputational: return "dense_computational";
    case DensityBasis::SymmetricSector: return "symmetric_sector";
    case DensityBasis::ComponentSpan: return "component_span";
  }
  return "unknown";
}

void BipartiteDensity::validate(double tol) const {
  const Eigen::Index dim = static_cast<Eigen::Index>(qubit_dim) * rest_dim;
  if (qubit_dim != 2 || rest_dim < 1 || matrix.rows() != dim || matrix.cols() != dim) {
    throw std::domain_error("density matrix shape does not match (2, d)");
  }
  if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw std::domain_error("density matrix is not Hermitian");
  }
  if (std::abs(matrix.trace() - Complex(1.0, 0.0)) > tol) {
    throw std::domain_error("density matrix trace differs from 1");
  }
}

Eigen::Matrix2cd BipartiteDensity::qubit_marginal() const {
  Eigen::Matrix2cd out;
  for (int q = 0; q < 2; ++q) {
    for (int p = 0; p < 2; ++p) {
      Complex acc = 0.0;
      for (int r = 0; r < rest_dim; ++r) acc += matrix(q * rest_dim + r, p * rest_dim + r);
      out(q, p) = acc;
    }
  }
  return out;
}

Eigen::MatrixXcd partial_transpose_qubit(const BipartiteDensity& rho) {
  const Eigen::Index d = rho.rest_dim;
  Eigen::MatrixXcd out(2 * d, 2 * d);
  for (int q = 0; q < 2; ++q) {
    for (int p = 0; p < 2; ++p) {
      out.block(q * d, p * d, d, d) = rho.matrix.block(p * d, q * d, d, d);
    }
  }
  return out;
}

NegativityValue negativity(const BipartiteDensity& rho, double eigen_cutoff) {
  rho.validate();
  const Eigen::MatrixXcd pt = partial_transpose_qubit(rho);

  std::vector<Eigen::Index> support;
  for (Eigen::Index i = 0; i < pt.rows(); ++i) {
    if (pt.row(i).cwiseAbs().maxCoeff() > 0.0) support.push_back(i);
  }
  const auto m = static_cast<Eigen::Index>(support.size());
  Eigen::MatrixXcd reduced(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) reduced(i, j) = pt(support[i], support[j]);
  }

  Eigen::VectorXd evals;
  if (reduced.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(reduced.real(), Eigen::EigenvaluesOnly);
    evals = solver.eigenvalues();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(reduced, Eigen::EigenvaluesOnly);
    evals = solver.eigenvalues();
  }
  double neg = 0.0;
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    if (evals[i] < -eigen_cutoff) neg -= evals[i];
  }
  return {neg, eigen_cutoff};
}

}  // namespace mmr
