#ifndef WBL_SELFTEST_H
#define WBL_SELFTEST_H

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "wbl/linalg.h"
#include "wbl/scenario.h"

namespace wbl {

struct ProductTestResult {
  double distance = 0.0;  // || rho_AB - rho_A (x) rho_B ||_1
  bool passed = false;
};

// Throws ValidationError if rho_ab is not a density matrix on `dims` (two
// subsystems).
ProductTestResult product_state_test(const ComplexMatrix &rho_ab, const SubsystemDims &dims,
                                     double tol);

struct ConditionalState {
  double probability = 0.0;
  std::optional<ComplexMatrix> rho;  // absent when the outcome never occurs
};

inline constexpr double kOutcomeFloor = 1e-12;

// p(i,j) rho^{i,j} = Tr_E[(1 (x) N_{i,j}) rho_ABE], indexed by e = 2i + j.
std::array<ConditionalState, kEveOutcomes> conditional_states(const QuantumStrategy &s);

// Single-qubit unitary Rz(alpha) Ry(beta) Rz(gamma), global phase dropped.
ComplexMatrix qubit_unitary(double alpha, double beta, double gamma);

struct LocalUnitaryPair {
  std::array<double, 3> angles_a{};
  std::array<double, 3> angles_b{};

  ComplexMatrix u_a() const { return qubit_unitary(angles_a[0], angles_a[1], angles_a[2]); }
  ComplexMatrix u_b() const { return qubit_unitary(angles_b[0], angles_b[1], angles_b[2]); }
};

struct FidelityOptions {
  int starts = 32;
  std::uint64_t seed = 20231;
  double initial_step = 0.5;
  double final_step = 1e-10;
};

struct BellFidelity {
  double fidelity = 0.0;
  LocalUnitaryPair aligner;
};

// <phi_ij| (U_A (x) U_B) rho (U_A (x) U_B)^dagger |phi_ij> at the
// aligner's angles.
double aligned_overlap(const ComplexMatrix &rho, std::size_t i, std::size_t j,
                       const LocalUnitaryPair &u);

// Maximizes the overlap with |phi_ij> over local qubit unitaries by
// multi-start compass search over the six angles. The first start is the
// identity.
BellFidelity bell_fidelity(const ComplexMatrix &rho, std::size_t i, std::size_t j,
                           const FidelityOptions &opts = {});

// Partial transpose on the second qubit has a negative eigenvalue.
bool is_npt(const ComplexMatrix &op_2x2, double tol = 1e-10);
std::array<bool, kEveOutcomes> entangled_povm_elements(const QuantumStrategy &s);

struct SelfTestReport {
  double tolerance = 0.0;
  std::uint64_t seed = 0;
  double witness_total = 0.0;
  bool oi_passed = false;
  double oi_deviation = 0.0;
  double product_test_distance = 0.0;
  bool product_test_passed = false;
  std::array<double, kEveOutcomes> conditional_probs{};
  std::array<bool, kEveOutcomes> outcome_present{};
  std::array<double, kEveOutcomes> conditional_chsh_values{};
  std::array<double, kEveOutcomes> bell_fidelities{};
  std::array<LocalUnitaryPair, kEveOutcomes> aligners{};
  std::array<bool, kEveOutcomes> entangled_eve_elements{};
  // |sum_e p_e Tr(I^e rho^e) - witness_total|
  double decomposition_residual = 0.0;
  bool eve_full_support = false;
  // The three links of the certification argument.
  bool witness_saturated = false;
  bool conditional_saturated = false;
  bool states_certified = false;
  bool certified = false;
};

// Requires qubit Alice and Bob (dims A = B = 2); throws ConfigError
// otherwise.
SelfTestReport selftest_report(const QuantumStrategy &s, double tol = 1e-9,
                               const FidelityOptions &opts = {});

struct SweepPoint {
  double visibility = 0.0;
  double witness = 0.0;
  double oi_deviation = 0.0;
};

// Werner sources with equal visibility v at each grid point.
std::vector<SweepPoint> visibility_sweep(const std::vector<double> &grid);

// Visibility at which the Werner witness crosses the classical bound,
// located by bisection on [0, 1] to width `precision`.
double critical_visibility(double precision = 1e-9);

}  // namespace wbl

#endif  // WBL_SELFTEST_H
