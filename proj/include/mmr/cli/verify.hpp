#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mmr/serialize.hpp"

namespace mmr::cli {

struct SuiteReport {
  std::string suite;
  std::size_t cases = 0;
  std::size_t passed = 0;
  double max_abs_error = 0.0;
  std::vector<std::string> failures;  // first few, for diagnostics
  Json details = Json::object();

  bool ok() const { return cases == passed; }
};

/// Case accounting with tolerance bookkeeping.
class Tally {
 public:
  /// |got - want| <= tol.
  void near(std::string_view label, double got, double want, double tol);
  /// value <= bound; the excess counts as error.
  void at_most(std::string_view label, double value, double bound);
  void expect(std::string_view label, bool ok);
  void merge(const Tally& other);

  SuiteReport report(std::string suite) const;

 private:
  void record(std::string_view label, bool ok, double error);

  std::size_t cases_ = 0;
  std::size_t passed_ = 0;
  double max_error_ = 0.0;
  std::vector<std::string> failures_;
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  int dominance_samples = 10000;  // per (M0, M1, N) cell
  int optimizer_starts = 100;     // per cell
};

/// Grid of (M0/N, M1/N) used by the dominance and optimizer checks; M0 != M1 in every cell.
const std::vector<double>& bound_grid_m0();
const std::vector<double>& bound_grid_m1();

/// Absolute slack added to the 2|<S0|S1>| product bound. Negativities carry
/// rounding noise near 1e-16, so overlaps far below that cannot be resolved.
inline constexpr double kOverlapBoundFloor = 1e-14;

/// |oracle loss negativity - closed form| for the uniform product pair
/// (theta0, theta1) on n spins; the component overlap magnitude goes to *overlap_out.
double near_orthogonal_product_error(int n, double theta0, double theta1,
                                     double* overlap_out = nullptr);

SuiteReport verify_oracle(const VerifyOptions& opts);
SuiteReport verify_bound(const VerifyOptions& opts);
SuiteReport verify_hessian(const VerifyOptions& opts);
SuiteReport verify_series(const VerifyOptions& opts);

/// name: all | oracle | bound | hessian | series. Throws std::invalid_argument otherwise.
std::vector<SuiteReport> run_suites(std::string_view name, const VerifyOptions& opts);

Json report_json(const std::vector<SuiteReport>& reports, const VerifyOptions& opts);

}  // namespace mmr::cli
