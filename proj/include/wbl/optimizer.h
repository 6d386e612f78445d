#ifndef WBL_OPTIMIZER_H
#define WBL_OPTIMIZER_H

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "wbl/scenario.h"

namespace wbl {

struct SeesawConfig {
  SubsystemDims dims{2, 2, 2, 2};  // (A, Abar, B, Bbar)
  int max_iterations = 1000;
  double convergence_tol = 1e-12;
  int restarts = 20;
  std::uint64_t seed = 1;
  // When set, Eve's POVM is held fixed at this value.
  std::optional<std::array<ComplexMatrix, kEveOutcomes>> frozen_eve_povm;
  // When set, restart 0 starts here instead of from a random strategy.
  std::optional<QuantumStrategy> initial_strategy;
};

// Throws ConfigError on max_iterations < 1, convergence_tol <= 0,
// restarts < 1 or unsupported dims.
void validate_config(const SeesawConfig &c);

struct RestartSummary {
  std::uint64_t sub_seed = 0;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct SeesawTrace {
  // Witness after the initial point and after every full sweep, for the best
  // restart.
  std::vector<double> values;
  QuantumStrategy final_strategy;
  bool converged = false;
  double best_value = 0.0;
  std::vector<RestartSummary> restarts;
  // 2 sqrt2 - I_CHSH^{i,j} PSD for the final observables.
  bool certificate_passed = false;
};

// Called with (iteration, current strategy, witness) after every sweep.
using SeesawObserver = std::function<void(int, const QuantumStrategy &, double)>;

// A single see-saw run from a given starting strategy. Each sweep updates
// Alice's observables, Bob's, Eve's basis, then each source in turn; every
// update is an exact maximization or an accepted ascent step, so the
// witness never decreases.
SeesawTrace seesaw_run(const QuantumStrategy &start, const SeesawConfig &config,
                       const SeesawObserver &observer = nullptr);

// Best of `restarts` runs. Restarts run concurrently, each deterministic
// from its sub-seed.
SeesawTrace seesaw_maximize(const SeesawConfig &config);

bool monotonicity_check(const SeesawTrace &trace, double tol = 1e-10);

}  // namespace wbl

#endif  // WBL_OPTIMIZER_H
