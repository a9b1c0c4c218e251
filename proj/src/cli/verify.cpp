#include "mmr/cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "mmr/bounds.hpp"
#include "mmr/noise.hpp"
#include "mmr/oracle.hpp"
#include "mmr/parallel.hpp"
#include "mmr/rng.hpp"
#include "mmr/states.hpp"

namespace mmr::cli {

namespace {

constexpr std::size_t kMaxFailures = 20;
constexpr double kOracleTol = 1e-9;

std::string describe(std::string_view label, double got, double want, double tol) {
  char buf[160];
  std::snprintf(buf, sizeof buf, ": got %.17g, want %.17g (tol %.3g)", got, want, tol);
  return std::string(label) + buf;
}

using Task = std::function<void(Tally&)>;

// Each task fills its own tally; merging in index order keeps the report
// independent of scheduling.
Tally run_tasks(const std::vector<Task>& tasks) {
  std::vector<Tally> parts(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t i) {
    try {
      tasks[i](parts[i]);
    } catch (const std::exception& e) {
      parts[i].expect(std::string("task ") + std::to_string(i) + " threw: " + e.what(), false);
    }
  });
  Tally total;
  for (const auto& p : parts) total.merge(p);
  return total;
}

std::string label_of(const char* fmt, auto... args) {
  char buf[160];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

std::vector<Complex> random_coeffs(Rng& rng, int count) {
  std::vector<Complex> c(static_cast<std::size_t>(count));
  double norm = 0.0;
  for (auto& z : c) {
    z = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    norm += std::norm(z);
  }
  for (auto& z : c) z /= std::sqrt(norm);
  return c;
}

std::vector<double> random_angles(Rng& rng, int n) {
  std::vector<double> t(static_cast<std::size_t>(n));
  for (auto& x : t) x = rng.uniform(0.0, std::numbers::pi);
  return t;
}

// Structured engines against the dense oracle at one spin.
void compare_engines(Tally& t, const MicroMacroState& s, int spin, bool with_loss,
                     const std::string& tag) {
  const auto o = oracle_measure_entropy(s, spin, OracleEngine::Dense);
  const auto branches = measure_spin(s, spin);
  t.near(tag + " P(up)", branches[0].probability, o.prob_up, kOracleTol);
  t.near(tag + " P(down)", branches[1].probability, o.prob_down, kOracleTol);
  t.near(tag + " E(up)", branch_entropy(branches[0]), o.e_up, kOracleTol);
  t.near(tag + " E(down)", branch_entropy(branches[1]), o.e_down, kOracleTol);
  if (with_loss) {
    t.near(tag + " loss negativity", negativity(lose_spin(s, spin)).value,
           oracle_loss_negativity(s, spin, OracleEngine::Dense), kOracleTol);
  }
}

void oracle_dicke_grid(std::vector<Task>& tasks) {
  for (int n = 2; n <= 8; ++n) {
    for (int k0 = 0; k0 <= n; ++k0) {
      for (int k1 = 0; k1 <= n; ++k1) {
        if (k0 == k1) continue;
        tasks.emplace_back([n, k0, k1](Tally& t) {
          const auto s = make_dicke_pair(n, k0, k1);
          const auto closed = dicke_branch_report(n, k0, k1);
          const double neg = negativity_symmetric(static_cast<double>(k0) / n,
                                                  static_cast<double>(k1) / n);
          for (int spin = 1; spin <= n; ++spin) {
            const auto tag = label_of("dicke n=%d k0=%d k1=%d spin=%d", n, k0, k1, spin);
            const auto o = oracle_measure_entropy(s, spin, OracleEngine::Dense);
            t.near(tag + " P(up)", closed.prob_up, o.prob_up, kOracleTol);
            t.near(tag + " P(down)", closed.prob_down, o.prob_down, kOracleTol);
            t.near(tag + " E(up)", closed.e_up, o.e_up, kOracleTol);
            t.near(tag + " E(down)", closed.e_down, o.e_down, kOracleTol);
            const bool loss_here = spin == 1 || spin == n;
            compare_engines(t, s, spin, loss_here, tag + " engine");
            if (loss_here) {
              t.near(tag + " negativity", neg,
                     oracle_loss_negativity(s, spin, OracleEngine::Dense), kOracleTol);
            }
          }
          t.near(label_of("dicke n=%d k0=%d k1=%d average", n, k0, k1), closed.avg,
                 average_entropy_after_measurement(s), kOracleTol);
        });
      }
    }
  }
}

void oracle_general_forms(std::vector<Task>& tasks, std::uint64_t seed) {
  // Non-symmetric products and arbitrary dense components, every spin.
  for (int n = 2; n <= 6; ++n) {
    for (int rep = 0; rep < 3; ++rep) {
      const std::uint64_t task_seed = derive_seed(seed, 1000 + 10 * n + rep);
      tasks.emplace_back([n, rep, task_seed](Tally& t) {
        Rng rng(task_seed);
        const MicroMacroState prod(make_product(random_angles(rng, n)),
                                   make_product(random_angles(rng, n)));
        for (int spin = 1; spin <= n; ++spin) {
          compare_engines(t, prod, spin, true, label_of("product n=%d rep=%d spin=%d", n, rep, spin));
        }
        if (n > 5) return;
        const std::size_t dim = std::size_t{1} << n;
        const MicroMacroState dense(make_dense(n, random_coeffs(rng, static_cast<int>(dim))),
                                    make_dense(n, random_coeffs(rng, static_cast<int>(dim))),
                                    {Complex(0.6, 0.0), Complex(0.0, 0.8)});
        for (int spin = 1; spin <= n; ++spin) {
          compare_engines(t, dense, spin, true, label_of("dense n=%d rep=%d spin=%d", n, rep, spin));
        }
      });
    }
  }
}

void oracle_sector_vs_dense(std::vector<Task>& tasks, std::uint64_t seed) {
  for (int n = 2; n <= kOracleDenseMaxSpins; ++n) {
    const std::uint64_t task_seed = derive_seed(seed, 2000 + n);
    tasks.emplace_back([n, task_seed](Tally& t) {
      Rng rng(task_seed);
      const MicroMacroState sup(make_dicke_superposition(n, random_coeffs(rng, n + 1)),
                                make_dicke_superposition(n, random_coeffs(rng, n + 1)));
      const double th0 = rng.uniform(0.0, std::numbers::pi);
      const double th1 = rng.uniform(0.0, std::numbers::pi);
      const auto prod = make_product_pair(n, th0, th1);
      for (const auto* s : {&sup, &prod}) {
        const char* kind = s == &sup ? "superposition" : "uniform product";
        const auto tag = label_of("sector vs dense %s n=%d", kind, n);
        const auto d = oracle_measure_entropy(*s, 1, OracleEngine::Dense);
        const auto q = oracle_measure_entropy(*s, 1, OracleEngine::Sector);
        t.near(tag + " P(up)", q.prob_up, d.prob_up, kOracleTol);
        t.near(tag + " E(up)", q.e_up, d.e_up, kOracleTol);
        t.near(tag + " E(down)", q.e_down, d.e_down, kOracleTol);
        if (n <= 8) {
          t.near(tag + " loss negativity", oracle_loss_negativity(*s, 1, OracleEngine::Sector),
                 oracle_loss_negativity(*s, 1, OracleEngine::Dense), kOracleTol);
        }
      }
    });
  }
}

}  // namespace

double near_orthogonal_product_error(int n, double theta0, double theta1, double* overlap_out) {
  const auto s = make_product_pair(n, theta0, theta1);
  const double ov = std::abs(s.component_overlap());
  if (overlap_out) *overlap_out = ov;
  const double c0 = std::cos(theta0);
  const double c1 = std::cos(theta1);
  return std::abs(oracle_loss_negativity(s, 1) - negativity_symmetric(c0 * c0, c1 * c1));
}

namespace {

void oracle_near_orthogonal(std::vector<Task>& tasks, std::uint64_t seed, Json& details) {
  // Uniform product pairs with small but nonzero component overlap. Angles stay
  // in [0, pi/2], where cos^2(theta) determines the state; beyond that the sign
  // of the amplitudes matters and no function of (p0, p1) can track it.
  tasks.emplace_back([](Tally& t) {
    double ov = 0.0;
    const double err = near_orthogonal_product_error(10, 0.2, 1.2, &ov);
    t.at_most(label_of("near-orthogonal product n=10 theta0=0.2 theta1=1.2 |<S0|S1>|=%.3e", ov), err,
              2.0 * ov + kOverlapBoundFloor);
  });
  static const int sizes[] = {4, 6, 8, 12, 20};
  for (int n : sizes) {
    const std::uint64_t task_seed = derive_seed(seed, 3000 + n);
    tasks.emplace_back([n, task_seed](Tally& t) {
      Rng rng(task_seed);
      for (int rep = 0; rep < 8; ++rep) {
        const double th0 = rng.uniform(0.0, 0.6);
        const double th1 = rng.uniform(th0 + 0.8, 0.5 * std::numbers::pi);
        double ov = 0.0;
        const double err = near_orthogonal_product_error(n, th0, th1, &ov);
        t.at_most(label_of("near-orthogonal product n=%d theta0=%.6f theta1=%.6f |<S0|S1>|=%.3e", n,
                           th0, th1, ov),
                  err, 2.0 * ov + kOverlapBoundFloor);
      }
    });
  }
  details["near_orthogonal_bound"] = "|closed - oracle| <= 2 |<S0|S1>| + 1e-14";
}

// Uniform + projected random + near-uniform perturbations, all feasible.
SpinMarginals sample_marginals(Rng& rng, int n, double p0, double p1, int kind) {
  std::vector<double> y0(static_cast<std::size_t>(n));
  std::vector<double> y1(static_cast<std::size_t>(n));
  if (kind % 2 == 0) {
    for (int j = 0; j < n; ++j) {
      y0[j] = rng.uniform();
      y1[j] = rng.uniform();
    }
  } else {
    const double scale = std::pow(10.0, -rng.uniform(1.0, 6.0));
    for (int j = 0; j < n; ++j) {
      y0[j] = p0 + scale * rng.uniform(-1.0, 1.0);
      y1[j] = p1 + scale * rng.uniform(-1.0, 1.0);
    }
  }
  return SpinMarginals(project_capped_simplex(y0, p0 * n), project_capped_simplex(y1, p1 * n));
}

double distance_from_uniform(const SpinMarginals& m, double p0, double p1) {
  double d = 0.0;
  for (int j = 0; j < m.size(); ++j) {
    d = std::max({d, std::abs(m.p0_up()[j] - p0), std::abs(m.p1_up()[j] - p1)});
  }
  return d;
}

// Reduced coordinates: spin n absorbs the fixed totals.
SpinMarginals shifted(const SpinMarginals& base, const Eigen::VectorXd& z) {
  const int n = base.size();
  auto p0 = base.p0_up();
  auto p1 = base.p1_up();
  for (int j = 0; j + 1 < n; ++j) {
    p0[j] += z(j);
    p0[n - 1] -= z(j);
    p1[j] += z(n - 1 + j);
    p1[n - 1] -= z(n - 1 + j);
  }
  return SpinMarginals(std::move(p0), std::move(p1));
}

Eigen::VectorXd fd_gradient(const SpinMarginals& m, double h) {
  const int dim = 2 * m.size() - 2;
  Eigen::VectorXd g(dim);
  for (int a = 0; a < dim; ++a) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
    e(a) = h;
    g(a) = (avg_ev_general(shifted(m, e)) - avg_ev_general(shifted(m, -e))) / (2.0 * h);
  }
  return g;
}

// Hessian of n * avg_ev_general in reduced coordinates; Richardson-extrapolated
// central differences, so the truncation error is O(h^4).
Eigen::MatrixXd fd_hessian(const SpinMarginals& m, double h) {
  const int n = m.size();
  const int dim = 2 * n - 2;
  auto f = [&](const Eigen::VectorXd& z) { return n * avg_ev_general(shifted(m, z)); };
  auto central = [&](int a, int b, double step) {
    Eigen::VectorXd ea = Eigen::VectorXd::Zero(dim);
    Eigen::VectorXd eb = Eigen::VectorXd::Zero(dim);
    ea(a) = step;
    eb(b) = step;
    return (f(ea + eb) - f(ea - eb) - f(-ea + eb) + f(-ea - eb)) / (4.0 * step * step);
  };
  Eigen::MatrixXd hess(dim, dim);
  for (int a = 0; a < dim; ++a) {
    for (int b = a; b < dim; ++b) {
      const double v = (4.0 * central(a, b, 0.5 * h) - central(a, b, h)) / 3.0;
      hess(a, b) = v;
      hess(b, a) = v;
    }
  }
  return hess;
}

std::vector<double> listed_eigenvalues(const HessianSpectrum& h) {
  std::vector<double> out;
  for (const auto& [value, mult] : h.eigenvalues) out.insert(out.end(), mult, value);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> sorted_eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + m.rows());
  std::sort(out.begin(), out.end());
  return out;
}

double relative_gap(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace

void Tally::record(std::string_view label, bool ok, double error) {
  ++cases_;
  if (ok) {
    ++passed_;
  } else if (failures_.size() < kMaxFailures) {
    failures_.emplace_back(label);
  }
  if (std::isfinite(error)) max_error_ = std::max(max_error_, error);
}

void Tally::near(std::string_view label, double got, double want, double tol) {
  const double err = std::abs(got - want);
  const bool ok = std::isfinite(got) && std::isfinite(want) && err <= tol;
  if (ok) {
    record(label, true, err);
  } else {
    record(describe(label, got, want, tol), false, err);
  }
}

void Tally::at_most(std::string_view label, double value, double bound) {
  const bool ok = std::isfinite(value) && value <= bound;
  const double excess = std::max(0.0, value - bound);
  if (ok) {
    record(label, true, excess);
  } else {
    char buf[120];
    std::snprintf(buf, sizeof buf, ": %.17g exceeds %.17g", value, bound);
    record(std::string(label) + buf, false, excess);
  }
}

void Tally::expect(std::string_view label, bool ok) { record(label, ok, 0.0); }

void Tally::merge(const Tally& other) {
  cases_ += other.cases_;
  passed_ += other.passed_;
  max_error_ = std::max(max_error_, other.max_error_);
  for (const auto& f : other.failures_) {
    if (failures_.size() >= kMaxFailures) break;
    failures_.push_back(f);
  }
}

SuiteReport Tally::report(std::string suite) const {
  SuiteReport r;
  r.suite = std::move(suite);
  r.cases = cases_;
  r.passed = passed_;
  r.max_abs_error = max_error_;
  r.failures = failures_;
  return r;
}

const std::vector<double>& bound_grid_m0() {
  static const std::vector<double> g{-0.45, -0.25, -0.05, 0.15, 0.35};
  return g;
}

const std::vector<double>& bound_grid_m1() {
  static const std::vector<double> g{-0.35, -0.15, 0.05, 0.25, 0.45};
  return g;
}

SuiteReport verify_oracle(const VerifyOptions& opts) {
  std::vector<Task> tasks;
  Json details = Json::object();
  oracle_dicke_grid(tasks);
  oracle_general_forms(tasks, opts.seed);
  oracle_sector_vs_dense(tasks, opts.seed);
  oracle_near_orthogonal(tasks, opts.seed, details);
  auto report = run_tasks(tasks).report("oracle");
  report.details = std::move(details);
  return report;
}

SuiteReport verify_bound(const VerifyOptions& opts) {
  std::vector<Task> tasks;
  const auto& g0 = bound_grid_m0();
  const auto& g1 = bound_grid_m1();
  std::uint64_t cell = 0;
  for (double f0 : g0) {
    for (double f1 : g1) {
      for (int n = 3; n <= 8; ++n, ++cell) {
        const std::uint64_t cell_seed = derive_seed(opts.seed, cell);
        tasks.emplace_back([=, &opts](Tally& t) {
          const double p0 = 0.5 + f0;
          const double p1 = 0.5 + f1;
          const double bound = ev_max(f0, f1);
          const auto tag = label_of("cell M0/N=%.2f M1/N=%.2f n=%d", f0, f1, n);
          t.near(tag + " uniform attains bound",
                 avg_ev_general(SpinMarginals::uniform(n, p0, p1)), bound, 1e-12);
          Rng rng(cell_seed);
          for (int i = 0; i < opts.dominance_samples; ++i) {
            const auto m = sample_marginals(rng, n, p0, p1, i);
            const double v = avg_ev_general(m);
            t.at_most(tag + label_of(" sample %d dominated", i), v, bound + 1e-12);
            if (bound - v <= 1e-12) {
              // Equality must come from (numerically) uniform marginals.
              t.at_most(tag + label_of(" sample %d equality at uniform", i),
                        distance_from_uniform(m, p0, p1), 1e-5);
            }
          }
          MaximizerConfig cfg;
          cfg.seed = derive_seed(cell_seed, 1);
          cfg.starts = opts.optimizer_starts;
          const auto res = maximize_avg_ev(f0 * n, f1 * n, n, cfg);
          for (std::size_t r = 0; r < res.runs.size(); ++r) {
            const auto& run = res.runs[r];
            t.expect(tag + label_of(" start %zu converged", r), run.converged);
            t.at_most(tag + label_of(" start %zu reaches uniform", r),
                      distance_from_uniform(run.argmax, p0, p1), 1e-6);
          }
        });
      }
    }
  }
  return run_tasks(tasks).report("bound");
}

SuiteReport verify_hessian(const VerifyOptions& opts) {
  std::vector<Task> tasks;

  // Gradient against central differences at seeded interior points.
  tasks.emplace_back([seed = derive_seed(opts.seed, 0)](Tally& t) {
    Rng rng(seed);
    for (int i = 0; i < 100; ++i) {
      const int n = 2 + static_cast<int>(rng.next() % 7);
      std::vector<double> p0(static_cast<std::size_t>(n));
      std::vector<double> p1(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) {
        p0[j] = rng.uniform(0.05, 0.95);
        p1[j] = rng.uniform(0.05, 0.95);
      }
      const SpinMarginals m(std::move(p0), std::move(p1));
      const auto analytic = ev_gradient(m);
      const auto numeric = fd_gradient(m, 1e-6);
      t.near(label_of("gradient point %d n=%d", i, n), (analytic - numeric).cwiseAbs().maxCoeff(),
             0.0, 1e-6);
    }
  });

  // Spectrum against dense eigensolve and finite differences.
  static const double pairs[][2] = {{0.75, 0.25}, {0.6, 0.4},  {0.9, 0.1},  {0.3, 0.5},
                                    {0.2, 0.7},   {0.45, 0.15}, {0.85, 0.6}, {0.35, 0.65}};
  for (int n = 3; n <= 8; ++n) {
    tasks.emplace_back([n](Tally& t) {
      for (const auto& pq : pairs) {
        const double p0 = pq[0];
        const double p1 = pq[1];
        const auto tag = label_of("hessian n=%d p0=%.2f p1=%.2f", n, p0, p1);
        const auto spectrum = hessian_spectrum(n, p0, p1);
        const auto listed = listed_eigenvalues(spectrum);
        t.expect(tag + " multiplicities sum to 2n-2",
                 static_cast<int>(listed.size()) == 2 * n - 2);
        const auto dense = sorted_eigenvalues(assemble_hessian(n, p0, p1));
        const auto fd = sorted_eigenvalues(fd_hessian(SpinMarginals::uniform(n, p0, p1), 2e-3));
        const std::size_t count = std::min({listed.size(), dense.size(), fd.size()});
        for (std::size_t i = 0; i < count; ++i) {
          t.near(tag + label_of(" eig %zu vs assembled", i), listed[i], dense[i], 1e-10);
          t.near(tag + label_of(" eig %zu vs finite differences", i), listed[i], fd[i], 1e-5);
        }
        t.expect(tag + " all negative", spectrum.all_negative && !listed.empty() &&
                                            listed.back() < -1e-12);
      }
    });
  }

  // Which closed form of ab - c^2 the numerics support.
  auto printed_max = std::make_shared<double>(0.0);
  auto corrected_max = std::make_shared<double>(0.0);
  tasks.emplace_back([printed_max, corrected_max](Tally& t) {
    for (int i = 1; i < 20; ++i) {
      for (int j = 1; j < 20; ++j) {
        if (i == j) continue;
        const double p0 = i / 20.0;
        const double p1 = j / 20.0;
        const double direct = hessian_gap_direct(p0, p1);
        const double corrected = relative_gap(hessian_gap_corrected(p0, p1), direct);
        *corrected_max = std::max(*corrected_max, corrected);
        *printed_max = std::max(*printed_max, relative_gap(hessian_gap_printed(p0, p1), direct));
        t.at_most(label_of("gap identity p0=%.2f p1=%.2f", p0, p1), corrected, 1e-9);
        t.expect(label_of("gap positive p0=%.2f p1=%.2f", p0, p1), direct > 0.0);
      }
    }
  });

  auto report = run_tasks(tasks).report("hessian");
  const bool corrected_ok = *corrected_max <= 1e-9;
  const bool printed_ok = *printed_max <= 1e-9;
  report.details["positivity_expression"] =
      corrected_ok && !printed_ok   ? "corrected"
      : printed_ok && !corrected_ok ? "printed"
      : corrected_ok                ? "both"
                                    : "neither";
  report.details["printed_max_rel_error"] = *printed_max;
  report.details["corrected_max_rel_error"] = *corrected_max;
  return report;
}

SuiteReport verify_series(const VerifyOptions&) {
  Tally t;
  const double ev_coef = 1.0 / (2.0 * std::numbers::ln2);
  for (double d : {0.1, 0.05, 0.025}) {
    const double avg = symmetric_branch_report(0.5 + 0.5 * d, 0.5 - 0.5 * d).avg;
    t.near(label_of("entropy quadratic coefficient d=%.3f (relative)", d),
           (1.0 - avg) / (d * d) / ev_coef, 1.0, 0.01);
    const double neg = negativity_symmetric(0.5 + 0.5 * d, 0.5 - 0.5 * d);
    t.near(label_of("negativity quadratic coefficient d=%.3f (relative)", d),
           (0.5 - neg) / (d * d) / 0.25, 1.0, 0.01);
  }
  t.near("series_ev(0.2, 0)", series_ev(0.2, 0.0), symmetric_branch_report(0.6, 0.4).avg, 1e-4);
  t.near("series_neg(0.2, 0)", series_neg(0.2, 0.0), negativity_symmetric(0.6, 0.4), 1e-5);
  t.near("series_neg(0.4, 0.1)", series_neg(0.4, 0.1), negativity_symmetric(0.8, 0.4), 1e-3);
  t.near("series_ev(0, 0.3)", series_ev(0.0, 0.3), 1.0, 0.0);
  t.near("series_neg(0, -0.2)", series_neg(0.0, -0.2), 0.5, 0.0);
  return t.report("series");
}

std::vector<SuiteReport> run_suites(std::string_view name, const VerifyOptions& opts) {
  if (name == "oracle") return {verify_oracle(opts)};
  if (name == "bound") return {verify_bound(opts)};
  if (name == "hessian") return {verify_hessian(opts)};
  if (name == "series") return {verify_series(opts)};
  if (name == "all") {
    return {verify_oracle(opts), verify_bound(opts), verify_hessian(opts), verify_series(opts)};
  }
  throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
}

Json report_json(const std::vector<SuiteReport>& reports, const VerifyOptions& opts) {
  Json doc;
  doc["rng"] = Rng::kAlgorithm;
  doc["seed"] = opts.seed;
  doc["dominance_samples"] = opts.dominance_samples;
  doc["optimizer_starts"] = opts.optimizer_starts;
  Json suites = Json::array();
  bool all = true;
  for (const auto& r : reports) {
    all = all && r.ok();
    Json s;
    s["suite"] = r.suite;
    s["cases"] = r.cases;
    s["passed"] = r.passed;
    s["max_abs_error"] = r.max_abs_error;
    s["failures"] = r.failures;
    if (!r.details.empty()) s["details"] = r.details;
    suites.push_back(std::move(s));
  }
  doc["suites"] = std::move(suites);
  doc["all_passed"] = all;
  return doc;
}

}  // namespace mmr::cli
