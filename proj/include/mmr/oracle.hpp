#pragma once

#include <array>

#include <Eigen/Dense>

#include "mmr/states.hpp"

namespace mmr {

// Brute-force reference engines. Nothing here uses the closed forms or the
// structured noise engines; they act on explicit state vectors and density
// matrices.

inline constexpr int kJointMaxSpins = 23;   // 2^(n+1) amplitudes
inline constexpr int kOracleDenseMaxSpins = 10;

/// a0 |0>|psi0> + a1 |1>|psi1> over qubit (x) spins, qubit as most significant bit.
struct DenseJointState {
  int n_spins = 0;
  Eigen::VectorXcd amplitudes;
};

/// Throws std::length_error for n > kJointMaxSpins.
DenseJointState dense_joint(const MicroMacroState& s);

enum class OracleEngine {
  Auto,    // dense up to kOracleDenseMaxSpins, symmetric sector beyond
  Dense,   // full Hilbert space
  Sector,  // qubit (x) measured spin (x) Dicke sector of the other n-1 spins
};

struct OracleMeasurement {
  double prob_up = 0.0;
  double prob_down = 0.0;
  double e_up = 0.0;
  double e_down = 0.0;
  double average = 0.0;
  OracleEngine engine = OracleEngine::Auto;
};

/// Measure spin `spin` (1-based) along z, renormalize each branch, entropy
/// across qubit|rest. The sector engine accepts Dicke, Dicke-superposition and
/// uniform product components at any n.
OracleMeasurement oracle_measure_entropy(const MicroMacroState& s, int spin,
                                         OracleEngine engine = OracleEngine::Auto);

/// oracle_measure_entropy averaged over every spin.
double oracle_average_entropy(const MicroMacroState& s, OracleEngine engine = OracleEngine::Auto);

/// Negativity across qubit|rest after tracing out spin `spin`.
double oracle_loss_negativity(const MicroMacroState& s, int spin,
                              OracleEngine engine = OracleEngine::Auto);

/// Trace out the middle factor of a density matrix on A (x) B (x) C.
Eigen::MatrixXcd partial_trace_middle(const Eigen::MatrixXcd& rho, std::array<Eigen::Index, 3> dims);

}  // namespace mmr
