#include "mmr/cli/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>

#include "mmr/bounds.hpp"
#include "mmr/oracle.hpp"
#include "mmr/parallel.hpp"
#include "mmr/states.hpp"

namespace mmr::cli {

namespace {

constexpr double kIntegerTol = 1e-9;

void check_grid(int grid) {
  if (grid < 2) throw std::invalid_argument("grid needs at least 2 points");
}

bool near_integer(double v, long& out) {
  const double r = std::round(v);
  if (std::abs(v - r) > kIntegerTol) return false;
  out = static_cast<long>(r);
  return true;
}

struct DickePoint {
  double x;
  double kbar_frac;
  double dk_frac;
};

std::optional<SweepRecord> dicke_record(int n, const DickePoint& pt, bool with_oracle,
                                        std::string& note) {
  long twice_center = 0;
  long dk = 0;
  if (!near_integer(2.0 * pt.kbar_frac * n, twice_center) || !near_integer(pt.dk_frac * n, dk)) {
    note = "non-integer k0/k1";
    return std::nullopt;
  }
  if ((twice_center + dk) % 2 != 0) {
    note = "k0 + k1 and dk have different parity";
    return std::nullopt;
  }
  const long k0 = (twice_center + dk) / 2;
  const long k1 = (twice_center - dk) / 2;
  if (k0 < 0 || k0 > n || k1 < 0 || k1 > n) {
    note = "k outside 0..N";
    return std::nullopt;
  }
  const auto r = dicke_branch_report(n, static_cast<int>(k0), static_cast<int>(k1));
  SweepRecord rec;
  rec.x = pt.x;
  rec.fixed = {{"dk_over_n", pt.dk_frac}, {"kbar_over_n", pt.kbar_frac}};
  rec.columns = {{"k0", static_cast<double>(k0)}, {"k1", static_cast<double>(k1)},
                 {"prob_up", r.prob_up},          {"e_up", r.e_up},
                 {"e_down", r.e_down},            {"avg_ev", r.avg}};
  if (with_oracle) {
    const double oracle =
        oracle_average_entropy(make_dicke_pair(n, static_cast<int>(k0), static_cast<int>(k1)));
    rec.columns.emplace_back("oracle_delta", oracle - r.avg);
  }
  return rec;
}

template <typename PointAt>
SweepTable run_dicke(int n, int grid, bool with_oracle, std::string x_name, PointAt point_at) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (with_oracle && n < 2) throw std::invalid_argument("oracle comparison needs n >= 2");
  check_grid(grid);
  std::vector<std::optional<SweepRecord>> rows(grid);
  std::vector<std::string> notes(grid);
  parallel_for(static_cast<std::size_t>(grid), [&](std::size_t i) {
    rows[i] = dicke_record(n, point_at(static_cast<int>(i)), with_oracle, notes[i]);
  });
  SweepTable table{x_name, {}, {}, {}};
  table.header = {x_name,
                  x_name == "dk_over_n" ? "kbar_over_n" : "dk_over_n",
                  "k0", "k1", "prob_up", "e_up", "e_down", "avg_ev"};
  if (with_oracle) table.header.emplace_back("oracle_delta");
  for (int i = 0; i < grid; ++i) {
    if (rows[i]) {
      table.records.push_back(std::move(*rows[i]));
    } else {
      table.notes.push_back("grid point " + std::to_string(i) + " skipped: " + notes[i]);
    }
  }
  return table;
}

std::optional<SweepRecord> negativity_record(double x, double dm, double mbar) {
  double p0 = 0.5 + mbar + 0.5 * dm;
  double p1 = 0.5 + mbar - 0.5 * dm;
  constexpr double slack = 1e-12;
  if (p0 < -slack || p0 > 1.0 + slack || p1 < -slack || p1 > 1.0 + slack) return std::nullopt;
  p0 = std::clamp(p0, 0.0, 1.0);
  p1 = std::clamp(p1, 0.0, 1.0);
  SweepRecord rec;
  rec.x = x;
  rec.fixed = {{"dm_over_n", dm}, {"mbar_over_n", mbar}};
  rec.columns = {{"p0_up", p0},
                 {"p1_up", p1},
                 {"negativity", negativity_symmetric(p0, p1)},
                 {"series_neg", series_neg(dm, mbar)},
                 {"avg_ev", symmetric_branch_report(p0, p1).avg},
                 {"series_ev", series_ev(dm, mbar)}};
  return rec;
}

std::vector<std::string> negativity_header(const char* x_name, const char* fixed_name) {
  return {x_name, fixed_name, "p0_up", "p1_up", "negativity", "series_neg", "avg_ev", "series_ev"};
}

}  // namespace

SweepTable sweep_dicke_distinctness(int n, double kbar_frac, int grid, bool with_oracle) {
  if (!(kbar_frac >= 0.0 && kbar_frac <= 1.0)) throw std::invalid_argument("kbar/N outside [0,1]");
  return run_dicke(n, grid, with_oracle, "dk_over_n", [&](int i) {
    const double x = static_cast<double>(i) / (grid - 1);
    return DickePoint{x, kbar_frac, x};
  });
}

SweepTable sweep_dicke_center(int n, double dk_half_frac, int grid, bool with_oracle) {
  if (!(dk_half_frac >= 0.0 && dk_half_frac <= 0.5)) {
    throw std::invalid_argument("dk/(2N) outside [0,1/2]");
  }
  return run_dicke(n, grid, with_oracle, "kbar_over_n", [&](int i) {
    const double x = static_cast<double>(i) / (grid - 1);
    return DickePoint{x, x, 2.0 * dk_half_frac};
  });
}

SweepTable sweep_negativity_distinctness(double mbar_frac, int grid) {
  check_grid(grid);
  if (!(std::abs(mbar_frac) <= 0.5)) throw std::invalid_argument("Mbar/N outside [-1/2,1/2]");
  SweepTable table{"dm_over_n", negativity_header("dm_over_n", "mbar_over_n"), {}, {}};
  for (int i = 0; i < grid; ++i) {
    const double x = static_cast<double>(i) / (grid - 1);
    if (auto rec = negativity_record(x, x, mbar_frac)) {
      table.records.push_back(std::move(*rec));
    } else {
      table.notes.push_back("grid point " + std::to_string(i) + " skipped: p outside [0,1]");
    }
  }
  return table;
}

SweepTable sweep_negativity_center(double dm_frac, int grid) {
  check_grid(grid);
  if (!(dm_frac >= 0.0 && dm_frac <= 1.0)) throw std::invalid_argument("dM/N outside [0,1]");
  SweepTable table{"mbar_over_n", negativity_header("mbar_over_n", "dm_over_n"), {}, {}};
  for (int i = 0; i < grid; ++i) {
    const double x = -0.5 + static_cast<double>(i) / (grid - 1);
    if (auto rec = negativity_record(x, dm_frac, x)) {
      table.records.push_back(std::move(*rec));
    } else {
      table.notes.push_back("grid point " + std::to_string(i) + " skipped: p outside [0,1]");
    }
  }
  return table;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& out, const SweepTable& table) {
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    out << (c ? "," : "") << table.header[c];
  }
  out << '\n';
  for (const auto& rec : table.records) {
    out << format_real(rec.x);
    for (const auto& [name, v] : rec.fixed) {
      if (name != table.x_name) out << ',' << format_real(v);
    }
    for (const auto& [name, v] : rec.columns) out << ',' << format_real(v);
    out << '\n';
  }
}

}  // namespace mmr::cli
