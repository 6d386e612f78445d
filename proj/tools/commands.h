#ifndef WBL_TOOLS_COMMANDS_H
#define WBL_TOOLS_COMMANDS_H

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace wbl::cli {

// Exit codes shared by every subcommand.
enum ExitCode : int { kOk = 0, kNumericalFailure = 1, kInputError = 2 };

inline constexpr const char *kToolVersion = "1.0.0";
inline constexpr const char *kOutDirEnv = "WBL_OUT_DIR";

// --out if given, else $WBL_OUT_DIR, else ./wbl_out.
std::filesystem::path resolve_out_dir(const std::optional<std::filesystem::path> &flag);

struct ReferenceOptions {
  std::optional<std::filesystem::path> strategy;
  double tol = 1e-9;
  std::filesystem::path out_dir = "wbl_out";
};

struct ClassicalOptions {
  bool exhaustive = false;
  bool filter_oi = false;
  std::filesystem::path out_dir = "wbl_out";
};

struct SweepOptions {
  double vmin = 0.0;
  double vmax = 1.0;
  int steps = 101;
  std::filesystem::path out_dir = "wbl_out";
};

struct SeesawOptions {
  std::optional<std::filesystem::path> config;
  std::optional<std::uint64_t> seed;
  std::optional<int> restarts;
  bool freeze_product_eve = false;
  bool require_converged = false;
  std::filesystem::path out_dir = "wbl_out";
};

struct SelftestOptions {
  std::optional<std::filesystem::path> strategy;
  std::optional<double> werner_visibility;
  double tol = 1e-9;
  std::uint64_t seed = 20231;
  bool require_certified = false;
  std::filesystem::path out_dir = "wbl_out";
};

struct StrategyExportOptions {
  std::string preset = "reference";  // reference | bit-example | werner
  double visibility = 1.0;
  std::optional<std::filesystem::path> output;
};

int cmd_reference(const ReferenceOptions &opts, std::ostream &out, std::ostream &err);
int cmd_classical_bound(const ClassicalOptions &opts, std::ostream &out, std::ostream &err);
int cmd_sweep(const SweepOptions &opts, std::ostream &out, std::ostream &err);
int cmd_seesaw(const SeesawOptions &opts, std::ostream &out, std::ostream &err);
int cmd_selftest(const SelftestOptions &opts, std::ostream &out, std::ostream &err);
int cmd_strategy(const StrategyExportOptions &opts, std::ostream &out, std::ostream &err);

}  // namespace wbl::cli

#endif  // WBL_TOOLS_COMMANDS_H
