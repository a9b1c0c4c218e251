#pragma once

#include <Eigen/Dense>

#include "mmr/states.hpp"

namespace mmr {

struct EntropyValue {
  double bits = 0.0;
};

struct NegativityValue {
  double value = 0.0;
  double eigen_cutoff = 0.0;
};

inline constexpr double kDefaultEigenCutoff = 1e-12;

/// -p log2 p - (1-p) log2 (1-p), with 0 log 0 = 0.
double binary_entropy(double p);

/// Von Neumann entropy (bits) of a 2x2 qubit density matrix.
EntropyValue qubit_entropy(const Eigen::Matrix2cd& rho_qubit);

/// Entropy across qubit|rest of a dense joint vector whose leading index is the
/// qubit (first half = |0> block). Throws std::domain_error if not normalized.
EntropyValue entanglement_entropy(const Eigen::VectorXcd& joint);

/// Same cut for a structured micro-macro state: the qubit reduced matrix is
/// assembled from the amplitudes and <psi0|psi1>.
EntropyValue entanglement_entropy(const MicroMacroState& s);

/// Reduced qubit density matrix of a micro-macro state.
Eigen::Matrix2cd qubit_reduced_state(const MicroMacroState& s);

enum class DensityBasis {
  DenseComputational,  // qubit (x) 2^(n-1) z-basis
  SymmetricSector,     // qubit (x) |D_{n-1,m}>, m = 0..n-1
  ComponentSpan,       // qubit (x) orthonormalized span of the branch components
};

/// Mixed state of qubit (x) a d-dimensional remainder; row index = q * d + r.
struct BipartiteDensity {
  int qubit_dim = 2;
  int rest_dim = 0;
  Eigen::MatrixXcd matrix;
  DensityBasis basis = DensityBasis::DenseComputational;

  /// Checks Hermiticity and unit trace within `tol`; throws std::domain_error.
  void validate(double tol = 1e-10) const;

  /// Trace over the remainder.
  Eigen::Matrix2cd qubit_marginal() const;
};

const char* to_string(DensityBasis b);

/// Partial transpose with respect to the qubit.
Eigen::MatrixXcd partial_transpose_qubit(const BipartiteDensity& rho);

/// Sum of |lambda| over eigenvalues lambda < -cutoff of the qubit partial transpose.
/// Rows and columns of the partial transpose that are identically zero are dropped
/// before the eigensolve.
NegativityValue negativity(const BipartiteDensity& rho, double eigen_cutoff = kDefaultEigenCutoff);

}  // namespace mmr
