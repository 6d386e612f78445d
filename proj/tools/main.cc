#include <iostream>

#include "CLI11.hpp"
#include "commands.h"

namespace fs = std::filesystem;
using namespace wbl::cli;

int main(int argc, char **argv) {
  CLI::App app{"Weak-bilocality witness toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::optional<fs::path> out_dir;
  app.add_option("--out", out_dir, "Output directory (default: $WBL_OUT_DIR or ./wbl_out)");

  ReferenceOptions ref;
  auto *reference = app.add_subcommand("reference", "Evaluate the witness on a strategy (default: reference)");
  reference->add_option("--strategy", ref.strategy, "Strategy JSON file");
  reference->add_option("--tol", ref.tol, "Operational-independence tolerance");

  ClassicalOptions cls;
  auto *classical = app.add_subcommand("classical-bound", "Maximize the witness over deterministic models");
  classical->add_flag("--exhaustive", cls.exhaustive, "Also search the unreduced response space");
  classical->add_flag("--filter-oi", cls.filter_oi, "Keep only operationally independent vertices");

  SweepOptions sw;
  auto *sweep = app.add_subcommand("sweep", "Werner visibility sweep");
  sweep->add_option("--vmin", sw.vmin);
  sweep->add_option("--vmax", sw.vmax);
  sweep->add_option("--steps", sw.steps);

  SeesawOptions ss;
  auto *seesaw = app.add_subcommand("seesaw", "See-saw maximization of the witness");
  seesaw->add_option("--config", ss.config, "SeesawConfig JSON file");
  seesaw->add_option("--seed", ss.seed);
  seesaw->add_option("--restarts", ss.restarts);
  seesaw->add_flag("--freeze-product-eve", ss.freeze_product_eve, "Fix Eve to the computational basis");
  seesaw->add_flag("--require-converged", ss.require_converged, "Exit 1 if the best run did not converge");

  SelftestOptions st;
  auto *selftest = app.add_subcommand("selftest", "Self-testing report for a strategy (default: reference)");
  auto *strategy_opt = selftest->add_option("--strategy", st.strategy, "Strategy JSON file");
  selftest->add_option("--werner", st.werner_visibility, "Use Werner sources of this visibility")
      ->excludes(strategy_opt);
  selftest->add_option("--tol", st.tol);
  selftest->add_option("--seed", st.seed, "Seed for fidelity restarts");
  selftest->add_flag("--require-certified", st.require_certified, "Exit 1 unless certified");

  StrategyExportOptions ex;
  auto *strategy = app.add_subcommand("strategy", "Write a preset strategy as JSON");
  strategy->add_option("preset", ex.preset, "reference | bit-example | werner")->required();
  strategy->add_option("--v", ex.visibility, "Visibility for the werner preset");
  strategy->add_option("-o,--output", ex.output, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  const fs::path dir = resolve_out_dir(out_dir);
  ref.out_dir = cls.out_dir = sw.out_dir = ss.out_dir = st.out_dir = dir;

  if (*reference) return cmd_reference(ref, std::cout, std::cerr);
  if (*classical) return cmd_classical_bound(cls, std::cout, std::cerr);
  if (*sweep) return cmd_sweep(sw, std::cout, std::cerr);
  if (*seesaw) return cmd_seesaw(ss, std::cout, std::cerr);
  if (*selftest) return cmd_selftest(st, std::cout, std::cerr);
  if (*strategy) return cmd_strategy(ex, std::cout, std::cerr);
  return kInputError;
}
