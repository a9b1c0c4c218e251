// Command-line front end: figure sweeps, verification suites, single evaluations.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "mmr/bounds.hpp"
#include "mmr/cli/sweep.hpp"
#include "mmr/cli/verify.hpp"
#include "mmr/measures.hpp"
#include "mmr/noise.hpp"
#include "mmr/serialize.hpp"
#include "mmr/states.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open '" + path + "' for writing");
  out << text;
}

mmr::Json read_document(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + path + "'");
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return mmr::Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("invalid JSON: ") + e.what());
  }
}

void print_notes(const mmr::cli::SweepTable& table) {
  for (const auto& note : table.notes) std::cerr << "note: " << note << '\n';
}

std::string table_text(const mmr::cli::SweepTable& table) {
  std::ostringstream out;
  mmr::cli::write_csv(out, table);
  return out.str();
}

mmr::Json eval_branch(const mmr::Json& in) {
  if (in.contains("state")) {
    const auto s = mmr::micro_macro_from_json(in.at("state"));
    const int spin = in.value("spin", 1);
    mmr::Json out;
    out["branches"] = mmr::Json::array();
    for (const auto& b : mmr::measure_spin(s, spin)) out["branches"].push_back(mmr::to_json(b));
    out["average_entropy"] = mmr::average_entropy_after_measurement(s);
    return out;
  }
  return mmr::to_json(
      mmr::symmetric_branch_report(in.at("p0_up").get<double>(), in.at("p1_up").get<double>()));
}

mmr::Json eval_negativity(const mmr::Json& in) {
  if (in.contains("state")) {
    const auto s = mmr::micro_macro_from_json(in.at("state"));
    const auto rho = mmr::lose_spin(s, in.value("spin", 1));
    const auto neg = mmr::negativity(rho);
    return mmr::Json{{"negativity", neg.value},
                     {"eigen_cutoff", neg.eigen_cutoff},
                     {"basis", mmr::to_string(rho.basis)},
                     {"rest_dim", rho.rest_dim}};
  }
  return mmr::Json{{"negativity", mmr::negativity_symmetric(in.at("p0_up").get<double>(),
                                                            in.at("p1_up").get<double>())}};
}

mmr::Json eval_state(const mmr::Json& in) {
  const auto s = mmr::micro_macro_from_json(in);
  const auto summary = mmr::macro_summary(s);
  mmr::Json out;
  out["mean0"] = summary.mean0;
  out["mean1"] = summary.mean1;
  out["sd0"] = summary.sd0;
  out["sd1"] = summary.sd1;
  out["distinctness"] = summary.lambda;
  out["spectra_disjoint"] = summary.spectra_disjoint;
  out["overlap"] = summary.overlap_mag;
  out["entanglement_entropy"] = mmr::entanglement_entropy(s).bits;
  out["marginals"] = mmr::to_json(mmr::spin_marginals(s));
  return out;
}

mmr::Json evaluate(const std::string& what, const mmr::Json& in) {
  if (what == "branch") return eval_branch(in);
  if (what == "negativity") return eval_negativity(in);
  if (what == "hessian") {
    return mmr::to_json(mmr::hessian_spectrum(in.at("n").get<int>(), in.at("p0").get<double>(),
                                              in.at("p1").get<double>()));
  }
  if (what == "dicke") {
    const int n = in.at("n").get<int>();
    const int k0 = in.at("k0").get<int>();
    const int k1 = in.at("k1").get<int>();
    auto out = mmr::to_json(mmr::dicke_branch_report(n, k0, k1));
    out["negativity"] = mmr::negativity_symmetric(static_cast<double>(k0) / n,
                                                  static_cast<double>(k1) / n);
    return out;
  }
  if (what == "max") {
    return mmr::Json{{"ev_max", mmr::ev_max(in.at("m0_over_n").get<double>(),
                                            in.at("m1_over_n").get<double>())}};
  }
  if (what == "optimize") {
    const auto cfg = mmr::maximizer_config_from_json(in.value("config", mmr::Json::object()));
    return mmr::to_json(mmr::maximize_avg_ev(in.at("m0").get<double>(), in.at("m1").get<double>(),
                                             in.at("n").get<int>(), cfg));
  }
  if (what == "state") return eval_state(in);
  throw UsageError("unknown evaluation '" + what + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Micro-macro entanglement robustness toolkit"};
  app.require_subcommand(1);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "CSV data for the robustness curves");
  sweep->require_subcommand(1);

  auto* dicke = sweep->add_subcommand("dicke", "average entropy of Dicke pairs after one measurement");
  int n = 0;
  int grid = 0;
  double kbar_frac = 0.0;
  double dk_frac = 0.0;
  std::string dicke_out = "-";
  bool with_oracle = false;
  dicke->add_option("--n", n, "number of spins")->required()->check(CLI::PositiveNumber);
  auto* kbar_opt = dicke->add_option("--kbar-frac", kbar_frac, "fixed kbar/N; sweeps dk/N");
  auto* dk_opt = dicke->add_option("--dk-frac", dk_frac, "fixed dk/(2N); sweeps kbar/N");
  kbar_opt->excludes(dk_opt);
  dicke->add_option("--grid", grid, "grid points")->required();
  dicke->add_option("--out", dicke_out, "output path, - for stdout");
  dicke->add_flag("--with-oracle", with_oracle, "add the brute-force oracle difference column");

  auto* neg = sweep->add_subcommand("negativity", "post-loss negativity of QA-symmetric pairs");
  int dm_grid = 0;
  int mbar_grid = 0;
  double mbar_frac = 0.0;
  double dm_frac = 0.0;
  std::string neg_out = "-";
  auto* dm_grid_opt = neg->add_option("--dm-frac-grid", dm_grid, "grid points over dM/N in [0,1]");
  auto* mbar_grid_opt =
      neg->add_option("--mbar-frac-grid", mbar_grid, "grid points over Mbar/N in [-1/2,1/2]");
  auto* mbar_opt = neg->add_option("--mbar-frac", mbar_frac, "fixed Mbar/N");
  auto* dm_opt = neg->add_option("--dm-frac", dm_frac, "fixed dM/N");
  dm_grid_opt->excludes(mbar_grid_opt);
  dm_grid_opt->excludes(dm_opt);
  mbar_grid_opt->excludes(mbar_opt);
  neg->add_option("--out", neg_out, "output path, - for stdout");

  // verify
  auto* verify = app.add_subcommand("verify", "run verification suites");
  std::string suite = "all";
  mmr::cli::VerifyOptions vopts;
  std::string verify_out = "-";
  verify->add_option("suite", suite, "all | oracle | bound | hessian | series")
      ->check(CLI::IsMember({"all", "oracle", "bound", "hessian", "series"}));
  verify->add_option("--seed", vopts.seed, "RNG seed");
  verify->add_option("--out", verify_out, "JSON report path, - for stdout");
  verify->add_option("--samples", vopts.dominance_samples, "dominance samples per cell")
      ->check(CLI::PositiveNumber);
  verify->add_option("--starts", vopts.optimizer_starts, "optimizer starts per cell")
      ->check(CLI::PositiveNumber);

  // eval
  auto* eval = app.add_subcommand("eval", "single evaluation from a JSON document");
  std::string what;
  std::string eval_in = "-";
  std::string eval_out = "-";
  eval->add_option("what", what, "branch | negativity | hessian | dicke | max | optimize | state")
      ->required()
      ->check(CLI::IsMember({"branch", "negativity", "hessian", "dicke", "max", "optimize", "state"}));
  eval->add_option("--in", eval_in, "input JSON path, - for stdin");
  eval->add_option("--out", eval_out, "output path, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*dicke) {
      if (kbar_opt->count() == 0 && dk_opt->count() == 0) {
        throw UsageError("one of --kbar-frac or --dk-frac is required");
      }
      const auto table = kbar_opt->count() > 0
                             ? mmr::cli::sweep_dicke_distinctness(n, kbar_frac, grid, with_oracle)
                             : mmr::cli::sweep_dicke_center(n, dk_frac, grid, with_oracle);
      print_notes(table);
      emit(dicke_out, table_text(table));
      return kExitOk;
    }
    if (*neg) {
      mmr::cli::SweepTable table;
      if (dm_grid_opt->count() > 0) {
        table = mmr::cli::sweep_negativity_distinctness(mbar_frac, dm_grid);
      } else if (mbar_grid_opt->count() > 0) {
        table = mmr::cli::sweep_negativity_center(dm_frac, mbar_grid);
      } else {
        throw UsageError("one of --dm-frac-grid or --mbar-frac-grid is required");
      }
      print_notes(table);
      emit(neg_out, table_text(table));
      return kExitOk;
    }
    if (*verify) {
      const auto reports = mmr::cli::run_suites(suite, vopts);
      const auto doc = mmr::cli::report_json(reports, vopts);
      emit(verify_out, doc.dump(2) + "\n");
      bool ok = true;
      for (const auto& r : reports) {
        if (r.ok()) continue;
        ok = false;
        std::cerr << r.suite << ": " << (r.cases - r.passed) << " of " << r.cases
                  << " cases failed\n";
        for (const auto& f : r.failures) std::cerr << "  " << f << '\n';
      }
      return ok ? kExitOk : kExitFailed;
    }
    if (*eval) {
      const auto in = read_document(eval_in);
      mmr::Json out;
      try {
        out = evaluate(what, in);
      } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("malformed input: ") + e.what());
      }
      emit(eval_out, out.dump(2) + "\n");
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::logic_error& e) {
    // invalid_argument, domain_error, length_error: the request itself is bad.
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailed;
  }
  return kExitUsage;
}
