#include "mmr/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mmr/measures.hpp"

namespace mmr {

namespace {

bool sector_capable(const MssPureState& psi) {
  return psi.is_symmetric_sector() || psi.is_uniform_product();
}

OracleEngine resolve(const MicroMacroState& s, OracleEngine engine) {
  const bool sector_ok = sector_capable(s.psi0()) && sector_capable(s.psi1());
  switch (engine) {
    case OracleEngine::Dense:
      if (s.size() > kOracleDenseMaxSpins) {
        throw std::length_error("dense oracle limited to " + std::to_string(kOracleDenseMaxSpins) +
                                " spins");
      }
      return engine;
    case OracleEngine::Sector:
      if (!sector_ok) throw std::domain_error("sector oracle needs permutation-symmetric components");
      return engine;
    case OracleEngine::Auto:
      if (s.size() <= kOracleDenseMaxSpins) return OracleEngine::Dense;
      if (sector_ok) return OracleEngine::Sector;
      throw std::length_error("state too large for the dense oracle and not permutation symmetric");
  }
  return engine;
}

void check_spin(const MicroMacroState& s, int spin) {
  if (s.size() < 2) throw std::domain_error("oracle needs at least two spins");
  if (spin < 1 || spin > s.size()) throw std::domain_error("spin index out of range");
}

// Joint vector over qubit (x) split-off spin (x) |D_{n-1,m}>, m = 0..n-1,
// index q*2n + s*n + m with s = 0 for up.
Eigen::VectorXcd sector_joint(const MicroMacroState& s) {
  const int n = s.size();
  const auto [a0, a1] = s.qubit_amplitudes();
  const std::array<Complex, 2> amps{a0, a1};
  const std::array<std::vector<Complex>, 2> coeffs{s.psi0().dicke_coefficients(),
                                                   s.psi1().dicke_coefficients()};
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4 * n);
  for (int q = 0; q < 2; ++q) {
    for (int k = 0; k <= n; ++k) {
      const Complex w = amps[q] * coeffs[q][k];
      if (k > 0) v[q * 2 * n + 0 * n + (k - 1)] += w * std::sqrt(static_cast<double>(k) / n);
      if (k < n) v[q * 2 * n + 1 * n + k] += w * std::sqrt(static_cast<double>(n - k) / n);
    }
  }
  return v;
}

struct Branch {
  double prob;
  double entropy;
};

// Keep the entries selected by `keep`, renormalize, entropy across the leading qubit.
template <typename Keep>
Branch project_and_measure(const Eigen::VectorXcd& joint, Keep keep) {
  Eigen::VectorXcd v = joint;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!keep(i)) v[i] = 0.0;
  }
  const double p = v.squaredNorm();
  if (p == 0.0) return {0.0, 0.0};
  v /= std::sqrt(p);
  return {p, entanglement_entropy(v).bits};
}

}  // namespace

DenseJointState dense_joint(const MicroMacroState& s) {
  const int n = s.size();
  if (n > kJointMaxSpins) {
    throw std::length_error("joint vector limited to " + std::to_string(kJointMaxSpins) + " spins");
  }
  const auto [a0, a1] = s.qubit_amplitudes();
  const Eigen::Index half = Eigen::Index{1} << n;
  DenseJointState out{n, Eigen::VectorXcd(2 * half)};
  out.amplitudes.head(half) = a0 * s.psi0().dense();
  out.amplitudes.tail(half) = a1 * s.psi1().dense();
  return out;
}

OracleMeasurement oracle_measure_entropy(const MicroMacroState& s, int spin, OracleEngine engine) {
  check_spin(s, spin);
  const int n = s.size();
  OracleMeasurement out;
  out.engine = resolve(s, engine);
  Branch up{}, down{};
  if (out.engine == OracleEngine::Dense) {
    const auto joint = dense_joint(s).amplitudes;
    const Eigen::Index bit = Eigen::Index{1} << (n - spin);
    up = project_and_measure(joint, [&](Eigen::Index i) { return (i & bit) != 0; });
    down = project_and_measure(joint, [&](Eigen::Index i) { return (i & bit) == 0; });
  } else {
    const auto joint = sector_joint(s);
    auto spin_of = [n](Eigen::Index i) { return (i / n) % 2; };
    up = project_and_measure(joint, [&](Eigen::Index i) { return spin_of(i) == 0; });
    down = project_and_measure(joint, [&](Eigen::Index i) { return spin_of(i) == 1; });
  }
  out.prob_up = up.prob;
  out.prob_down = down.prob;
  out.e_up = up.entropy;
  out.e_down = down.entropy;
  out.average = up.prob * up.entropy + down.prob * down.entropy;
  return out;
}

double oracle_average_entropy(const MicroMacroState& s, OracleEngine engine) {
  const OracleEngine resolved = resolve(s, engine);
  if (resolved == OracleEngine::Sector) {
    // Every spin is the split-off spin of the same sector decomposition.
    return oracle_measure_entropy(s, 1, resolved).average;
  }
  double acc = 0.0;
  for (int j = 1; j <= s.size(); ++j) acc += oracle_measure_entropy(s, j, resolved).average;
  return acc / s.size();
}

Eigen::MatrixXcd partial_trace_middle(const Eigen::MatrixXcd& rho, std::array<Eigen::Index, 3> dims) {
  const auto [da, db, dc] = dims;
  if (rho.rows() != da * db * dc || rho.cols() != rho.rows()) {
    throw std::domain_error("partial trace dimensions do not match the matrix");
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(da * dc, da * dc);
  for (Eigen::Index a = 0; a < da; ++a) {
    for (Eigen::Index c = 0; c < dc; ++c) {
      for (Eigen::Index a2 = 0; a2 < da; ++a2) {
        for (Eigen::Index c2 = 0; c2 < dc; ++c2) {
          Complex acc = 0.0;
          for (Eigen::Index b = 0; b < db; ++b) {
            acc += rho((a * db + b) * dc + c, (a2 * db + b) * dc + c2);
          }
          out(a * dc + c, a2 * dc + c2) = acc;
        }
      }
    }
  }
  return out;
}

double oracle_loss_negativity(const MicroMacroState& s, int spin, OracleEngine engine) {
  check_spin(s, spin);
  const int n = s.size();
  const OracleEngine resolved = resolve(s, engine);
  BipartiteDensity reduced;
  if (resolved == OracleEngine::Dense) {
    const auto joint = dense_joint(s).amplitudes;
    const Eigen::MatrixXcd rho = joint * joint.adjoint();
    // qubit and spins before `spin` | spin | spins after
    const Eigen::Index before = Eigen::Index{2} << (spin - 1);
    const Eigen::Index after = Eigen::Index{1} << (n - spin);
    reduced.matrix = partial_trace_middle(rho, {before, 2, after});
    reduced.rest_dim = 1 << (n - 1);
    reduced.basis = DensityBasis::DenseComputational;
  } else {
    const auto joint = sector_joint(s);
    const Eigen::MatrixXcd rho = joint * joint.adjoint();
    reduced.matrix = partial_trace_middle(rho, {2, 2, n});
    reduced.rest_dim = n;
    reduced.basis = DensityBasis::SymmetricSector;
  }
  return negativity(reduced).value;
}

}  // namespace mmr
