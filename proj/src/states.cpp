#include "mmr/states.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mmr {

namespace {

constexpr double kNormTol = 1e-12;

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

// Exact for the dense range (n <= 24), where every value fits a double.
double binomial_exact(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

double squared_norm(const std::vector<Complex>& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return s;
}

void check_spin_count(int n) {
  if (n < 1) throw std::domain_error("spin count must be positive, got " + std::to_string(n));
}

void check_dense_cap(int n) {
  if (n > kMaxDenseSpins) {
    throw std::length_error("dense expansion limited to " + std::to_string(kMaxDenseSpins) +
                            " spins, got " + std::to_string(n));
  }
}

// Bit position of spin j (0-based): spin 1 is the most significant bit.
inline std::size_t spin_bit(int n, int j) { return std::size_t{1} << (n - 1 - j); }

// <D_{n,k}|product> for k = 0..n via the symmetric branching recurrence, which
// keeps every intermediate bounded by 1.
std::vector<double> product_dicke_projections(const std::vector<double>& theta) {
  std::vector<double> u{1.0};
  for (std::size_t m = 0; m < theta.size(); ++m) {
    const double c = std::cos(theta[m]);
    const double s = std::sin(theta[m]);
    const double next = static_cast<double>(m + 1);
    std::vector<double> v(m + 2, 0.0);
    for (std::size_t k = 0; k <= m + 1; ++k) {
      double acc = 0.0;
      if (k <= m) acc += s * std::sqrt((next - k) / next) * u[k];
      if (k >= 1) acc += c * std::sqrt(k / next) * u[k - 1];
      v[k] = acc;
    }
    u = std::move(v);
  }
  return u;
}

}  // namespace

MssPureState::MssPureState(int n, Form form) : n_(n), form_(std::move(form)) {
  check_spin_count(n);
  std::visit(
      [n](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Dicke>) {
          if (f.k < 0 || f.k > n) {
            throw std::domain_error("Dicke excitation count " + std::to_string(f.k) +
                                    " outside 0.." + std::to_string(n));
          }
        } else if constexpr (std::is_same_v<T, DickeSuperposition>) {
          if (f.coeffs.size() != static_cast<std::size_t>(n) + 1) {
            throw std::domain_error("Dicke superposition needs n+1 coefficients");
          }
          if (std::abs(squared_norm(f.coeffs) - 1.0) > kNormTol) {
            throw std::domain_error("Dicke superposition coefficients are not normalized");
          }
        } else if constexpr (std::is_same_v<T, Product>) {
          if (f.theta.size() != static_cast<std::size_t>(n)) {
            throw std::domain_error("product state needs one angle per spin");
          }
          for (double t : f.theta) {
            if (!std::isfinite(t)) throw std::domain_error("product angle is not finite");
          }
        } else {
          check_dense_cap(n);
          if (f.amplitudes.size() != (std::size_t{1} << n)) {
            throw std::domain_error("dense amplitude vector must have length 2^n");
          }
          if (std::abs(squared_norm(f.amplitudes) - 1.0) > kNormTol) {
            throw std::domain_error("dense amplitudes are not normalized");
          }
        }
      },
      form_);
}

bool MssPureState::is_uniform_product() const {
  const auto* p = std::get_if<Product>(&form_);
  if (p == nullptr) return false;
  return std::all_of(p->theta.begin(), p->theta.end(),
                     [&](double t) { return t == p->theta.front(); });
}

std::vector<Complex> MssPureState::dicke_coefficients() const {
  if (const auto* d = std::get_if<Dicke>(&form_)) {
    std::vector<Complex> c(n_ + 1, 0.0);
    c[d->k] = 1.0;
    return c;
  }
  if (const auto* d = std::get_if<DickeSuperposition>(&form_)) return d->coeffs;
  if (is_uniform_product()) {
    const double theta = std::get<Product>(form_).theta.front();
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    std::vector<Complex> out(n_ + 1, 0.0);
    for (int k = 0; k <= n_; ++k) {
      const int down = n_ - k;
      if ((c == 0.0 && k > 0) || (s == 0.0 && down > 0)) continue;
      double log_mag = 0.5 * std::log(binomial(n_, k));
      if (k > 0) log_mag += k * std::log(std::abs(c));
      if (down > 0) log_mag += down * std::log(std::abs(s));
      double sign = 1.0;
      if (c < 0.0 && (k % 2 == 1)) sign = -sign;
      if (s < 0.0 && (down % 2 == 1)) sign = -sign;
      out[k] = sign * std::exp(log_mag);
    }
    return out;
  }
  throw std::domain_error("state has no symmetric-sector representation");
}

Eigen::VectorXcd MssPureState::dense() const {
  check_dense_cap(n_);
  const std::size_t dim = std::size_t{1} << n_;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Dicke>) {
          const double amp = 1.0 / std::sqrt(binomial_exact(n_, f.k));
          for (std::size_t i = 0; i < dim; ++i) {
            if (std::popcount(i) == f.k) out[static_cast<Eigen::Index>(i)] = amp;
          }
        } else if constexpr (std::is_same_v<T, DickeSuperposition>) {
          std::vector<double> scale(n_ + 1);
          for (int k = 0; k <= n_; ++k) scale[k] = 1.0 / std::sqrt(binomial_exact(n_, k));
          for (std::size_t i = 0; i < dim; ++i) {
            const int k = std::popcount(i);
            out[static_cast<Eigen::Index>(i)] = f.coeffs[k] * scale[k];
          }
        } else if constexpr (std::is_same_v<T, Product>) {
          for (std::size_t i = 0; i < dim; ++i) {
            double amp = 1.0;
            for (int j = 0; j < n_; ++j) {
              amp *= (i & spin_bit(n_, j)) ? std::cos(f.theta[j]) : std::sin(f.theta[j]);
            }
            out[static_cast<Eigen::Index>(i)] = amp;
          }
        } else {
          for (std::size_t i = 0; i < dim; ++i) out[static_cast<Eigen::Index>(i)] = f.amplitudes[i];
        }
      },
      form_);
  return out;
}

MssPureState make_dicke(int n, int k) { return MssPureState(n, Dicke{k}); }

MssPureState make_symmetric_product(int n, double theta) {
  check_spin_count(n);
  return MssPureState(n, Product{std::vector<double>(n, theta)});
}

MssPureState make_product(std::vector<double> theta) {
  const int n = static_cast<int>(theta.size());
  return MssPureState(n, Product{std::move(theta)});
}

MssPureState make_dicke_superposition(int n, std::vector<Complex> coeffs) {
  return MssPureState(n, DickeSuperposition{std::move(coeffs)});
}

MssPureState make_dense(int n, std::vector<Complex> amplitudes) {
  return MssPureState(n, Dense{std::move(amplitudes)});
}

Complex overlap(const MssPureState& a, const MssPureState& b) {
  if (a.size() != b.size()) {
    throw std::domain_error("overlap of states with different spin counts");
  }
  if (a.is_dense() || b.is_dense()) return a.dense().dot(b.dense());

  if (a.is_dicke() && b.is_dicke()) {
    return std::get<Dicke>(a.form()).k == std::get<Dicke>(b.form()).k ? 1.0 : 0.0;
  }
  if (a.is_product() && b.is_product()) {
    const auto& ta = std::get<Product>(a.form()).theta;
    const auto& tb = std::get<Product>(b.form()).theta;
    double r = 1.0;
    for (std::size_t j = 0; j < ta.size(); ++j) r *= std::cos(ta[j] - tb[j]);
    return r;
  }
  if (a.is_symmetric_sector() && b.is_symmetric_sector()) {
    const auto ca = a.dicke_coefficients();
    const auto cb = b.dicke_coefficients();
    Complex acc = 0.0;
    for (std::size_t k = 0; k < ca.size(); ++k) acc += std::conj(ca[k]) * cb[k];
    return acc;
  }
  // One symmetric-sector state against one product state.
  if (a.is_product()) return std::conj(overlap(b, a));
  const auto ca = a.dicke_coefficients();
  const auto u = product_dicke_projections(std::get<Product>(b.form()).theta);
  Complex acc = 0.0;
  for (std::size_t k = 0; k < ca.size(); ++k) acc += std::conj(ca[k]) * u[k];
  return acc;
}

MagnetizationSpectrum::MagnetizationSpectrum(int n, std::vector<double> by_up_count)
    : n_(n), probs_(std::move(by_up_count)) {
  check_spin_count(n);
  if (probs_.size() != static_cast<std::size_t>(n) + 1) {
    throw std::domain_error("spectrum needs n+1 entries");
  }
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0)) throw std::domain_error("negative spectral probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-10) throw std::domain_error("spectrum does not sum to 1");
}

double MagnetizationSpectrum::at(double m) const {
  const double k = m + 0.5 * n_;
  const double kr = std::round(k);
  if (std::abs(k - kr) > 1e-9) {
    throw std::domain_error("magnetization value is not on the lattice m = k - n/2");
  }
  if (kr < 0 || kr > n_) return 0.0;
  return probs_[static_cast<std::size_t>(kr)];
}

double MagnetizationSpectrum::mean() const {
  double acc = 0.0;
  for (int k = 0; k <= n_; ++k) acc += probs_[k] * m_z(n_, k);
  return acc;
}

double MagnetizationSpectrum::standard_deviation() const {
  const double mu = mean();
  double acc = 0.0;
  for (int k = 0; k <= n_; ++k) {
    const double d = m_z(n_, k) - mu;
    acc += probs_[k] * d * d;
  }
  return std::sqrt(acc);
}

MagnetizationSpectrum magnetization_spectrum(const MssPureState& psi) {
  const int n = psi.size();
  std::vector<double> probs(n + 1, 0.0);
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Dicke>) {
          probs[f.k] = 1.0;
        } else if constexpr (std::is_same_v<T, DickeSuperposition>) {
          for (int k = 0; k <= n; ++k) probs[k] = std::norm(f.coeffs[k]);
        } else if constexpr (std::is_same_v<T, Product>) {
          // Poisson-binomial distribution of the up count.
          std::vector<double> dist{1.0};
          for (double t : f.theta) {
            const double up = std::cos(t) * std::cos(t);
            const double down = std::sin(t) * std::sin(t);
            std::vector<double> next(dist.size() + 1, 0.0);
            for (std::size_t k = 0; k < dist.size(); ++k) {
              next[k] += dist[k] * down;
              next[k + 1] += dist[k] * up;
            }
            dist = std::move(next);
          }
          probs = std::move(dist);
        } else {
          for (std::size_t i = 0; i < f.amplitudes.size(); ++i) {
            probs[std::popcount(i)] += std::norm(f.amplitudes[i]);
          }
        }
      },
      psi.form());
  return MagnetizationSpectrum(n, std::move(probs));
}

MicroMacroState::MicroMacroState(MssPureState psi0, MssPureState psi1)
    : MicroMacroState(std::move(psi0), std::move(psi1),
                      {Complex(M_SQRT1_2, 0.0), Complex(M_SQRT1_2, 0.0)}) {}

MicroMacroState::MicroMacroState(MssPureState psi0, MssPureState psi1,
                                 std::pair<Complex, Complex> qubit_amplitudes,
                                 double orthogonality_tol)
    : psi0_(std::move(psi0)),
      psi1_(std::move(psi1)),
      amps_(qubit_amplitudes),
      orthogonality_tol_(orthogonality_tol) {
  if (psi0_.size() != psi1_.size()) {
    throw std::domain_error("micro-macro components have different spin counts");
  }
  if (std::abs(std::norm(amps_.first) + std::norm(amps_.second) - 1.0) > kNormTol) {
    throw std::domain_error("qubit amplitudes are not normalized");
  }
  if (!(orthogonality_tol_ >= 0.0)) {
    throw std::domain_error("orthogonality tolerance must be nonnegative");
  }
  overlap_ = overlap(psi0_, psi1_);
}

void MicroMacroState::require_orthogonal() const {
  if (!components_orthogonal()) {
    throw std::domain_error("components overlap |<psi0|psi1>| = " +
                            std::to_string(std::abs(overlap_)) + " exceeds tolerance");
  }
}

MicroMacroState make_dicke_pair(int n, int k0, int k1) {
  return MicroMacroState(make_dicke(n, k0), make_dicke(n, k1));
}

MicroMacroState make_ghz_pair(int n) { return make_dicke_pair(n, n, 0); }

MicroMacroState make_product_pair(int n, double theta0, double theta1) {
  return MicroMacroState(make_symmetric_product(n, theta0), make_symmetric_product(n, theta1));
}

MacroSummary macro_summary(const MicroMacroState& s) {
  const auto spec0 = magnetization_spectrum(s.psi0());
  const auto spec1 = magnetization_spectrum(s.psi1());
  MacroSummary out;
  out.mean0 = spec0.mean();
  out.mean1 = spec1.mean();
  out.sd0 = spec0.standard_deviation();
  out.sd1 = spec1.standard_deviation();
  out.lambda = std::abs(out.mean0 - out.mean1);
  double shared = 0.0;
  for (int k = 0; k <= s.size(); ++k) {
    shared += spec0.by_up_count()[k] * spec1.by_up_count()[k];
  }
  out.spectra_disjoint = shared <= kSpectrumDisjointTol;
  out.overlap_mag = std::abs(s.component_overlap());
  return out;
}

SpinMarginals::SpinMarginals(std::vector<double> p0_up, std::vector<double> p1_up)
    : p0_(std::move(p0_up)), p1_(std::move(p1_up)) {
  if (p0_.empty() || p0_.size() != p1_.size()) {
    throw std::domain_error("marginal vectors must be nonempty and of equal length");
  }
  auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!std::all_of(p0_.begin(), p0_.end(), in_unit) ||
      !std::all_of(p1_.begin(), p1_.end(), in_unit)) {
    throw std::domain_error("marginal probability outside [0,1]");
  }
}

SpinMarginals SpinMarginals::with_totals(std::vector<double> p0_up, std::vector<double> p1_up,
                                         double m0, double m1) {
  SpinMarginals out(std::move(p0_up), std::move(p1_up));
  if (std::abs(out.m0() - m0) > 1e-10 || std::abs(out.m1() - m1) > 1e-10) {
    throw std::domain_error("marginal sums do not match the declared magnetizations");
  }
  return out;
}

SpinMarginals SpinMarginals::uniform(int n, double p0, double p1) {
  check_spin_count(n);
  return SpinMarginals(std::vector<double>(n, p0), std::vector<double>(n, p1));
}

double SpinMarginals::m0() const {
  return std::accumulate(p0_.begin(), p0_.end(), 0.0) - 0.5 * size();
}

double SpinMarginals::m1() const {
  return std::accumulate(p1_.begin(), p1_.end(), 0.0) - 0.5 * size();
}

double spin_up_probability(const MssPureState& psi, int spin) {
  const int n = psi.size();
  if (spin < 1 || spin > n) {
    throw std::domain_error("spin index " + std::to_string(spin) + " outside 1.." +
                            std::to_string(n));
  }
  const int j = spin - 1;
  return std::visit(
      [&](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Dicke>) {
          return static_cast<double>(f.k) / n;
        } else if constexpr (std::is_same_v<T, DickeSuperposition>) {
          double acc = 0.0;
          for (int k = 0; k <= n; ++k) acc += std::norm(f.coeffs[k]) * k;
          return acc / n;
        } else if constexpr (std::is_same_v<T, Product>) {
          const double c = std::cos(f.theta[j]);
          return c * c;
        } else {
          double acc = 0.0;
          const std::size_t bit = spin_bit(n, j);
          for (std::size_t i = 0; i < f.amplitudes.size(); ++i) {
            if (i & bit) acc += std::norm(f.amplitudes[i]);
          }
          return acc;
        }
      },
      psi.form());
}

SpinMarginals spin_marginals(const MicroMacroState& s) {
  const int n = s.size();
  std::vector<double> p0(n), p1(n);
  for (int j = 1; j <= n; ++j) {
    p0[j - 1] = std::clamp(spin_up_probability(s.psi0(), j), 0.0, 1.0);
    p1[j - 1] = std::clamp(spin_up_probability(s.psi1(), j), 0.0, 1.0);
  }
  return SpinMarginals(std::move(p0), std::move(p1));
}

}  // namespace mmr
