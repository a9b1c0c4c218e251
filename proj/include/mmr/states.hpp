#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace mmr {

using Complex = std::complex<double>;

/// Largest spin count for which a dense 2^n amplitude vector is materialized.
inline constexpr int kMaxDenseSpins = 24;

// Representations of an N-spin pure state. Dense vectors use the z-basis with
// spin 1 as the most significant bit and |up> encoded as bit 1.
struct Dicke {
  int k = 0;
};

struct DickeSuperposition {
  std::vector<Complex> coeffs;  // amplitude per excitation count k = 0..n
};

struct Product {
  std::vector<double> theta;  // per spin: cos(theta)|up> + sin(theta)|down>
};

struct Dense {
  std::vector<Complex> amplitudes;
};

/// A normalized pure state of n two-level spins.
class MssPureState {
 public:
  using Form = std::variant<Dicke, DickeSuperposition, Product, Dense>;

  MssPureState(int n, Form form);

  int size() const { return n_; }
  const Form& form() const { return form_; }

  bool is_dicke() const { return std::holds_alternative<Dicke>(form_); }
  bool is_dicke_superposition() const {
    return std::holds_alternative<DickeSuperposition>(form_);
  }
  bool is_product() const { return std::holds_alternative<Product>(form_); }
  bool is_dense() const { return std::holds_alternative<Dense>(form_); }

  /// Dicke and Dicke-superposition states live in the symmetric sector.
  bool is_symmetric_sector() const { return is_dicke() || is_dicke_superposition(); }

  /// Product state with the same angle on every spin.
  bool is_uniform_product() const;

  /// Coefficients over |D_{n,k}>, k = 0..n. Valid for symmetric-sector forms
  /// and for uniform products; throws std::domain_error otherwise.
  std::vector<Complex> dicke_coefficients() const;

  /// Full 2^n amplitude vector. Throws std::length_error above kMaxDenseSpins.
  Eigen::VectorXcd dense() const;

 private:
  int n_;
  Form form_;
};

MssPureState make_dicke(int n, int k);
MssPureState make_symmetric_product(int n, double theta);
MssPureState make_product(std::vector<double> theta);
MssPureState make_dicke_superposition(int n, std::vector<Complex> coeffs);
MssPureState make_dense(int n, std::vector<Complex> amplitudes);

/// <a|b>; structured fast paths where both forms allow one.
Complex overlap(const MssPureState& a, const MssPureState& b);

/// Distribution of the total Jz eigenvalue m = k - n/2 (hbar = 1).
class MagnetizationSpectrum {
 public:
  MagnetizationSpectrum(int n, std::vector<double> by_up_count);

  int size() const { return n_; }
  /// Probability indexed by up-spin count k = 0..n.
  const std::vector<double>& by_up_count() const { return probs_; }
  static double m_z(int n, int k) { return k - 0.5 * n; }
  /// Probability of the eigenvalue m (must be one of -n/2, -n/2+1, ...).
  double at(double m) const;
  double mean() const;
  double standard_deviation() const;

 private:
  int n_;
  std::vector<double> probs_;
};

MagnetizationSpectrum magnetization_spectrum(const MssPureState& psi);

/// (|0>|psi0> a0 + |1>|psi1> a1), the qubit-MSS entangled pair.
class MicroMacroState {
 public:
  static constexpr double kDefaultOrthogonalityTol = 1e-8;

  MicroMacroState(MssPureState psi0, MssPureState psi1);
  MicroMacroState(MssPureState psi0, MssPureState psi1,
                  std::pair<Complex, Complex> qubit_amplitudes,
                  double orthogonality_tol = kDefaultOrthogonalityTol);

  const MssPureState& psi0() const { return psi0_; }
  const MssPureState& psi1() const { return psi1_; }
  const std::pair<Complex, Complex>& qubit_amplitudes() const { return amps_; }
  double orthogonality_tol() const { return orthogonality_tol_; }
  int size() const { return psi0_.size(); }

  /// <psi0|psi1>, recorded at construction.
  Complex component_overlap() const { return overlap_; }
  bool components_orthogonal() const { return std::abs(overlap_) <= orthogonality_tol_; }

  /// Throws std::domain_error unless the components are orthogonal within tolerance.
  void require_orthogonal() const;

 private:
  MssPureState psi0_;
  MssPureState psi1_;
  std::pair<Complex, Complex> amps_;
  double orthogonality_tol_;
  Complex overlap_;
};

MicroMacroState make_dicke_pair(int n, int k0, int k1);
MicroMacroState make_ghz_pair(int n);
MicroMacroState make_product_pair(int n, double theta0, double theta1);

struct MacroSummary {
  double mean0 = 0.0;
  double mean1 = 0.0;
  double sd0 = 0.0;
  double sd1 = 0.0;
  double lambda = 0.0;  // distinctness |mean0 - mean1|
  bool spectra_disjoint = false;
  double overlap_mag = 0.0;
};

inline constexpr double kSpectrumDisjointTol = 1e-12;

MacroSummary macro_summary(const MicroMacroState& s);

/// Per-spin up probabilities of the two MSS components. M0 and M1 are implied
/// by the sums: sum(p0_up) = M0 + n/2.
class SpinMarginals {
 public:
  SpinMarginals(std::vector<double> p0_up, std::vector<double> p1_up);

  /// Validates the sums against declared totals (within 1e-10).
  static SpinMarginals with_totals(std::vector<double> p0_up, std::vector<double> p1_up,
                                   double m0, double m1);

  /// Every spin has p0_up = p0 and p1_up = p1.
  static SpinMarginals uniform(int n, double p0, double p1);

  int size() const { return static_cast<int>(p0_.size()); }
  const std::vector<double>& p0_up() const { return p0_; }
  const std::vector<double>& p1_up() const { return p1_; }

  double m0() const;
  double m1() const;
  double delta_m() const { return m0() - m1(); }
  double mean_m() const { return 0.5 * (m0() + m1()); }

 private:
  std::vector<double> p0_;
  std::vector<double> p1_;
};

SpinMarginals spin_marginals(const MicroMacroState& s);

/// Up probability of spin j (1-based) in psi.
double spin_up_probability(const MssPureState& psi, int spin);

}  // namespace mmr
