#include "mmr/noise.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

namespace mmr {

namespace {

void check_spin(const MicroMacroState& s, int spin) {
  if (s.size() < 2) {
    throw std::domain_error("single-spin noise needs at least two spins");
  }
  if (spin < 1 || spin > s.size()) {
    throw std::domain_error("spin index " + std::to_string(spin) + " outside 1.." +
                            std::to_string(s.size()));
  }
}

bool permutation_symmetric(const MssPureState& psi) {
  return psi.is_symmetric_sector() || psi.is_uniform_product();
}

SpinProjection normalized_projection(int n_rest, std::vector<Complex> coeffs, bool dicke_coeffs) {
  double norm2 = 0.0;
  for (const auto& c : coeffs) norm2 += std::norm(c);
  if (norm2 == 0.0) return {};
  const double norm = std::sqrt(norm2);
  for (auto& c : coeffs) c /= norm;
  if (dicke_coeffs) return {norm, make_dicke_superposition(n_rest, std::move(coeffs))};
  return {norm, make_dense(n_rest, std::move(coeffs))};
}

}  // namespace

const char* to_string(Outcome o) { return o == Outcome::Up ? "up" : "down"; }

SpinProjection project_spin(const MssPureState& psi, int spin, Outcome outcome) {
  const int n = psi.size();
  if (n < 2) throw std::domain_error("projection needs at least two spins");
  if (spin < 1 || spin > n) throw std::domain_error("spin index out of range");
  const bool up = outcome == Outcome::Up;

  if (const auto* d = std::get_if<Dicke>(&psi.form())) {
    const int k = d->k;
    if (up) {
      if (k == 0) return {};
      return {std::sqrt(static_cast<double>(k) / n), make_dicke(n - 1, k - 1)};
    }
    if (k == n) return {};
    return {std::sqrt(static_cast<double>(n - k) / n), make_dicke(n - 1, k)};
  }
  if (const auto* d = std::get_if<DickeSuperposition>(&psi.form())) {
    // |D_{n,k}> = sqrt(k/n)|up>|D_{n-1,k-1}> + sqrt((n-k)/n)|down>|D_{n-1,k}>
    std::vector<Complex> rest(n, 0.0);
    for (int m = 0; m < n; ++m) {
      rest[m] = up ? d->coeffs[m + 1] * std::sqrt((m + 1.0) / n)
                   : d->coeffs[m] * std::sqrt(static_cast<double>(n - m) / n);
    }
    return normalized_projection(n - 1, std::move(rest), true);
  }
  if (const auto* p = std::get_if<Product>(&psi.form())) {
    const double t = p->theta[spin - 1];
    const double factor = up ? std::cos(t) : std::sin(t);
    if (factor == 0.0) return {};
    std::vector<double> rest;
    rest.reserve(n - 1);
    for (int j = 0; j < n; ++j) {
      if (j != spin - 1) rest.push_back(p->theta[j]);
    }
    return {factor, make_product(std::move(rest))};
  }
  const auto& amps = std::get<Dense>(psi.form()).amplitudes;
  const std::size_t bit = std::size_t{1} << (n - spin);
  const std::size_t low_mask = bit - 1;
  std::vector<Complex> rest(std::size_t{1} << (n - 1));
  for (std::size_t r = 0; r < rest.size(); ++r) {
    // Re-insert the measured bit between the high and low parts of r.
    const std::size_t full = ((r & ~low_mask) << 1) | (up ? bit : 0) | (r & low_mask);
    rest[r] = amps[full];
  }
  return normalized_projection(n - 1, std::move(rest), false);
}

std::array<OutcomeBranch, 2> measure_spin(const MicroMacroState& s, int spin) {
  check_spin(s, spin);
  const auto [a0, a1] = s.qubit_amplitudes();
  std::array<OutcomeBranch, 2> out;
  const std::array<Outcome, 2> outcomes{Outcome::Up, Outcome::Down};
  for (std::size_t i = 0; i < 2; ++i) {
    OutcomeBranch& b = out[i];
    b.outcome = outcomes[i];
    b.measured_index = spin;
    auto p0 = project_spin(s.psi0(), spin, b.outcome);
    auto p1 = project_spin(s.psi1(), spin, b.outcome);
    const Complex w0 = p0.state ? a0 * p0.factor : Complex(0.0);
    const Complex w1 = p1.state ? a1 * p1.factor : Complex(0.0);
    b.probability = std::norm(w0) + std::norm(w1);
    if (b.probability == 0.0) continue;
    const double scale = 1.0 / std::sqrt(b.probability);
    MssPureState s0 = p0.state ? *p0.state : *p1.state;
    MssPureState s1 = p1.state ? *p1.state : *p0.state;
    b.post_state.emplace(std::move(s0), std::move(s1), std::pair{w0 * scale, w1 * scale},
                         s.orthogonality_tol());
    b.component_overlap = (p0.state && p1.state) ? std::abs(b.post_state->component_overlap()) : 0.0;
  }
  return out;
}

double branch_entropy(const OutcomeBranch& branch) {
  if (branch.empty()) return 0.0;
  return entanglement_entropy(*branch.post_state).bits;
}

BipartiteDensity lose_spin(const MicroMacroState& s, int spin) {
  check_spin(s, spin);
  const int n = s.size();
  const auto [a0, a1] = s.qubit_amplitudes();
  const std::array<Complex, 2> amps{a0, a1};

  BipartiteDensity rho;
  if (s.psi0().is_symmetric_sector() && s.psi1().is_symmetric_sector()) {
    const int d = n;
    const std::array<std::vector<Complex>, 2> coeffs{s.psi0().dicke_coefficients(),
                                                     s.psi1().dicke_coefficients()};
    Eigen::VectorXcd v_up = Eigen::VectorXcd::Zero(2 * d);
    Eigen::VectorXcd v_down = Eigen::VectorXcd::Zero(2 * d);
    for (int q = 0; q < 2; ++q) {
      for (int m = 0; m < d; ++m) {
        v_up[q * d + m] = amps[q] * coeffs[q][m + 1] * std::sqrt((m + 1.0) / n);
        v_down[q * d + m] = amps[q] * coeffs[q][m] * std::sqrt(static_cast<double>(n - m) / n);
      }
    }
    rho.rest_dim = d;
    rho.basis = DensityBasis::SymmetricSector;
    rho.matrix = v_up * v_up.adjoint() + v_down * v_down.adjoint();
    return rho;
  }

  // Component span: the four remainders <o_j|psi_q>, orthonormalized through
  // their Gram matrix.
  struct Piece {
    int qubit;
    int outcome;
    Complex factor;
    MssPureState state;
  };
  std::vector<Piece> pieces;
  const std::array<const MssPureState*, 2> comps{&s.psi0(), &s.psi1()};
  for (int q = 0; q < 2; ++q) {
    for (int o = 0; o < 2; ++o) {
      auto proj = project_spin(*comps[q], spin, o == 0 ? Outcome::Up : Outcome::Down);
      if (proj.state) pieces.push_back({q, o, proj.factor, std::move(*proj.state)});
    }
  }
  const auto count = static_cast<Eigen::Index>(pieces.size());
  Eigen::MatrixXcd gram(count, count);
  for (Eigen::Index l = 0; l < count; ++l) {
    for (Eigen::Index r = l; r < count; ++r) {
      const Complex g = std::conj(pieces[l].factor) * pieces[r].factor *
                        (l == r ? Complex(1.0) : overlap(pieces[l].state, pieces[r].state));
      gram(l, r) = g;
      gram(r, l) = std::conj(g);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
  // Numerical rank: eigenvalues at rounding level belong to dependent pieces
  // (a product component leaves the same remainder for both outcomes). Keeping
  // them injects O(sqrt(eps)) coherences that show up in the negativity.
  const double floor = 16.0 * static_cast<double>(count) * std::numeric_limits<double>::epsilon() *
                       eig.eigenvalues().maxCoeff();
  std::vector<Eigen::Index> kept;
  for (Eigen::Index m = 0; m < count; ++m) {
    if (eig.eigenvalues()[m] > floor) kept.push_back(m);
  }
  const auto d = static_cast<int>(kept.size());
  // Coordinates of piece l along basis vector m: sqrt(lambda_m) conj(U_lm).
  std::array<Eigen::VectorXcd, 2> v{Eigen::VectorXcd::Zero(2 * d), Eigen::VectorXcd::Zero(2 * d)};
  for (Eigen::Index l = 0; l < count; ++l) {
    const auto& piece = pieces[static_cast<std::size_t>(l)];
    for (int m = 0; m < d; ++m) {
      const Eigen::Index col = kept[static_cast<std::size_t>(m)];
      v[piece.outcome][piece.qubit * d + m] +=
          amps[piece.qubit] * std::sqrt(eig.eigenvalues()[col]) *
          std::conj(eig.eigenvectors()(l, col));
    }
  }
  rho.rest_dim = d;
  rho.basis = DensityBasis::ComponentSpan;
  rho.matrix = v[0] * v[0].adjoint() + v[1] * v[1].adjoint();
  return rho;
}

double average_entropy_after_measurement(const MicroMacroState& s) {
  if (s.size() < 2) throw std::domain_error("single-spin noise needs at least two spins");
  auto spin_average = [&](int spin) {
    double acc = 0.0;
    for (const auto& b : measure_spin(s, spin)) {
      if (b.probability > 0.0) acc += b.probability * branch_entropy(b);
    }
    return acc;
  };
  if (permutation_symmetric(s.psi0()) && permutation_symmetric(s.psi1())) {
    return spin_average(1);
  }
  double total = 0.0;
  for (int j = 1; j <= s.size(); ++j) total += spin_average(j);
  return total / s.size();
}

}  // namespace mmr
