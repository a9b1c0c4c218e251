#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace mmr::cli {

/// One row of a figure sweep.
struct SweepRecord {
  double x = 0.0;
  std::vector<std::pair<std::string, double>> fixed;
  std::vector<std::pair<std::string, double>> columns;
};

struct SweepTable {
  std::string x_name;
  std::vector<std::string> header;  // x, the other fixed coordinate, then columns
  std::vector<SweepRecord> records;
  std::vector<std::string> notes;  // skipped grid points
};

/// Average entropy after one measurement for Dicke pairs, swept over dk/N in
/// [0, 1] at fixed kbar/N. Grid points without integer (k0, k1) in 0..n are skipped.
SweepTable sweep_dicke_distinctness(int n, double kbar_frac, int grid, bool with_oracle = false);

/// Same quantities swept over kbar/N in [0, 1] at fixed dk/(2N).
SweepTable sweep_dicke_center(int n, double dk_half_frac, int grid, bool with_oracle = false);

/// Post-loss negativity of QA-symmetric pairs, swept over dM/N in [0, 1] at fixed Mbar/N.
SweepTable sweep_negativity_distinctness(double mbar_frac, int grid);

/// Same quantities swept over Mbar/N in [-1/2, 1/2] at fixed dM/N.
SweepTable sweep_negativity_center(double dm_frac, int grid);

/// 17 significant digits, '.' decimal separator.
std::string format_real(double v);

/// Header row then one line per record, LF line endings.
void write_csv(std::ostream& out, const SweepTable& table);

}  // namespace mmr::cli
