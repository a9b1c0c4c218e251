#include <algorithm>
#include <array>
#include <span>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "detail/objective.hpp"
#include "mmr/bounds.hpp"
#include "mmr/rng.hpp"

namespace mmr {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kBoxMargin = 1e-9;
constexpr int kMaxHalvings = 60;

// One block (p0 or p1) of the feasible set: sum = total inside [lo, hi]^n.
struct Block {
  double total;
  double lo;
  double hi;
  bool pinned;  // total at 0 or n: the block is a single point
};

Block make_block(int n, double total) {
  if (total <= 0.0) return {0.0, 0.0, 0.0, true};
  if (total >= n) return {static_cast<double>(n), 1.0, 1.0, true};
  const double margin = std::min({kBoxMargin, total / (2.0 * n), (n - total) / (2.0 * n)});
  return {total, margin, 1.0 - margin, false};
}

class Problem {
 public:
  Problem(int n, double total0, double total1)
      : n_(n), blocks_{make_block(n, total0), make_block(n, total1)} {}

  int n() const { return n_; }

  // x = (p0, p1) stacked.
  std::vector<double> project(const std::vector<double>& y) const {
    std::vector<double> x(2 * n_);
    for (int b = 0; b < 2; ++b) {
      const Block& blk = blocks_[b];
      std::span<const double> part(y.data() + b * n_, n_);
      if (blk.pinned) {
        std::fill(x.begin() + b * n_, x.begin() + (b + 1) * n_, blk.lo);
      } else {
        auto p = project_capped_simplex(part, blk.total, blk.lo, blk.hi);
        std::copy(p.begin(), p.end(), x.begin() + b * n_);
      }
    }
    return x;
  }

  double value(const std::vector<double>& x) const {
    double acc = 0.0;
    for (int j = 0; j < n_; ++j) acc += detail::spin_term(x[j], x[n_ + j]);
    return acc / n_;
  }

  // Partial derivatives of the average, zero on pinned blocks. Each block is
  // shifted to zero mean: feasible directions have zero sum per block, so the
  // shift changes nothing but keeps the multiplier of the sum constraint out of
  // the slope arithmetic, where it would swamp slopes near the optimum.
  std::vector<double> gradient(const std::vector<double>& x) const {
    std::vector<double> g(2 * n_, 0.0);
    for (int j = 0; j < n_; ++j) {
      if (!blocks_[0].pinned) g[j] = detail::partial_p0(x[j], x[n_ + j]) / n_;
      if (!blocks_[1].pinned) g[n_ + j] = detail::partial_p1(x[j], x[n_ + j]) / n_;
    }
    for (int b = 0; b < 2; ++b) {
      const auto first = g.begin() + b * n_;
      const double mean = std::accumulate(first, first + n_, 0.0) / n_;
      std::for_each(first, first + n_, [mean](double& v) { v -= mean; });
    }
    return g;
  }

 private:
  int n_;
  std::array<Block, 2> blocks_;
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

std::vector<double> axpy(const std::vector<double>& x, double alpha, const std::vector<double>& g) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + alpha * g[i];
  return out;
}

std::vector<double> diff(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

double stationarity(const Problem& prob, const std::vector<double>& x, const std::vector<double>& g) {
  const auto d = diff(prob.project(axpy(x, 1.0, g)), x);
  return std::sqrt(dot(d, d));
}

SpinMarginals to_marginals(const std::vector<double>& x, int n) {
  std::vector<double> p0(x.begin(), x.begin() + n);
  std::vector<double> p1(x.begin() + n, x.end());
  return SpinMarginals(std::move(p0), std::move(p1));
}

struct RunTrace {
  MaximizerRun run;
  std::size_t accepted;
};

RunTrace ascend(const Problem& prob, const std::vector<double>& start, const MaximizerConfig& cfg) {
  std::vector<double> x = prob.project(start);
  double f = prob.value(x);
  std::vector<double> g = prob.gradient(x);
  double alpha = 1.0;
  double pg = stationarity(prob, x, g);
  int iter = 0;
  std::size_t accepted = 0;
  bool converged = pg <= cfg.tol;

  while (!converged && iter < cfg.max_iter) {
    ++iter;
    bool step_taken = false;
    std::vector<double> xn, gn;
    double fn = f;
    double trial = alpha;
    for (int h = 0; h < kMaxHalvings; ++h, trial *= 0.5) {
      xn = prob.project(axpy(x, trial, g));
      const auto d = diff(xn, x);
      const double slope = dot(g, d);
      if (slope <= 0.0) continue;
      fn = prob.value(xn);
      const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(f));
      if (std::abs(fn - f) > floor) {
        if (fn >= f + kArmijo * slope) {
          gn = prob.gradient(xn);
          step_taken = true;
          break;
        }
      } else {
        // Function differences are below rounding: require the step to stay
        // on the rising side of the line maximum instead.
        gn = prob.gradient(xn);
        if (dot(gn, d) >= 0.0) {
          step_taken = true;
          break;
        }
      }
    }
    if (!step_taken) break;

    const auto s = diff(xn, x);
    const auto y = diff(gn, g);
    const double sy = dot(s, y);
    // Barzilai-Borwein trial step for the next iteration (ascent: sy < 0).
    alpha = sy < 0.0 ? std::clamp(dot(s, s) / -sy, 1e-12, 1e12) : std::min(2.0 * trial, 1e12);

    x = std::move(xn);
    g = std::move(gn);
    f = fn;
    ++accepted;
    pg = stationarity(prob, x, g);
    converged = pg <= cfg.tol;
  }
  return {MaximizerRun{to_marginals(x, prob.n()), f, iter, converged, pg}, accepted};
}

void check_totals(int n, double m0, double m1) {
  if (n < 1) throw std::domain_error("spin count must be positive");
  const double half = 0.5 * n;
  if (!(std::abs(m0) <= half) || !(std::abs(m1) <= half)) {
    throw std::domain_error("magnetization totals outside [-n/2, n/2]");
  }
}

}  // namespace

std::vector<double> project_capped_simplex(std::span<const double> y, double total, double lo,
                                           double hi) {
  const auto n = static_cast<double>(y.size());
  if (y.empty() || !(lo <= hi) || total < n * lo - 1e-12 || total > n * hi + 1e-12) {
    throw std::domain_error("capped simplex is empty");
  }
  auto clipped_sum = [&](double tau) {
    double s = 0.0;
    for (double v : y) s += std::clamp(v - tau, lo, hi);
    return s;
  };
  const auto [ymin, ymax] = std::minmax_element(y.begin(), y.end());
  double tau_lo = *ymin - hi;  // every coordinate at hi
  double tau_hi = *ymax - lo;  // every coordinate at lo
  for (int i = 0; i < 200 && tau_hi - tau_lo > 0.0; ++i) {
    const double mid = 0.5 * (tau_lo + tau_hi);
    if (mid == tau_lo || mid == tau_hi) break;
    if (clipped_sum(mid) > total) {
      tau_lo = mid;
    } else {
      tau_hi = mid;
    }
  }
  double tau = 0.5 * (tau_lo + tau_hi);
  // Solve for the shift exactly on the free set identified by bisection.
  double free_sum = 0.0;
  double clamped_sum = 0.0;
  int free_count = 0;
  for (double v : y) {
    const double z = v - tau;
    if (z <= lo) {
      clamped_sum += lo;
    } else if (z >= hi) {
      clamped_sum += hi;
    } else {
      free_sum += v;
      ++free_count;
    }
  }
  if (free_count > 0) tau = (free_sum + clamped_sum - total) / free_count;
  std::vector<double> x(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) x[i] = std::clamp(y[i] - tau, lo, hi);
  return x;
}

MaximizerRun maximize_avg_ev_from(const SpinMarginals& start, const MaximizerConfig& cfg) {
  const int n = start.size();
  const double m0 = start.m0();
  const double m1 = start.m1();
  check_totals(n, m0, m1);
  Problem prob(n, m0 + 0.5 * n, m1 + 0.5 * n);
  std::vector<double> x(start.p0_up());
  x.insert(x.end(), start.p1_up().begin(), start.p1_up().end());
  return ascend(prob, x, cfg).run;
}

MaximizerResult maximize_avg_ev(double m0, double m1, int n, const MaximizerConfig& cfg) {
  check_totals(n, m0, m1);
  if (cfg.starts < 1) throw std::domain_error("optimizer needs at least one start");
  if (cfg.max_iter < 0 || !(cfg.tol > 0.0)) throw std::domain_error("invalid optimizer config");
  Problem prob(n, m0 + 0.5 * n, m1 + 0.5 * n);
  Rng rng(cfg.seed);

  std::vector<MaximizerRun> runs;
  std::size_t history = 0;
  for (int s = 0; s < cfg.starts; ++s) {
    std::vector<double> start(2 * n);
    for (auto& v : start) v = rng.uniform();
    auto trace = ascend(prob, start, cfg);
    history += trace.accepted;
    runs.push_back(std::move(trace.run));
  }
  const auto best = std::max_element(runs.begin(), runs.end(), [](const auto& a, const auto& b) {
    return a.value < b.value;
  });
  const bool all_converged =
      std::all_of(runs.begin(), runs.end(), [](const auto& r) { return r.converged; });
  MaximizerResult out{best->argmax, best->value, best->iterations, all_converged,
                      best->gradient_norm, history, {}};
  out.runs = std::move(runs);
  return out;
}

}  // namespace mmr
