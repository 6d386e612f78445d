#ifndef WBL_WITNESS_H
#define WBL_WITNESS_H

#include <array>
#include <cstddef>
#include <numbers>
#include <vector>

#include "wbl/scenario.h"

namespace wbl {

inline constexpr double kQuantumBound = 2.0 * std::numbers::sqrt2;
inline constexpr double kClassicalBound = 2.0;

// The witness is
//
//   I = < A0 (B0 - B1) E0 + A1 (B0 + B1) E1 >,
//   E0 = N0 - N1 - N2 + N3,   E1 = N0 + N1 - N2 - N3,
//
// which splits over Eve's outcome e = 2i + j into conditional CHSH terms
//
//   I_CHSH^{i,j} = (-1)^{i+j} A0 (B0 - B1) + (-1)^i A1 (B0 + B1).
//
// The (-1)^i on the second term is what makes the split reproduce E1; see
// docs/sign_convention.md.
struct SignConvention {
  std::array<int, kEveOutcomes> first_term{};   // coefficient of A0 (B0 - B1) for e
  std::array<int, kEveOutcomes> second_term{};  // coefficient of A1 (B0 + B1) for e
};

SignConvention sign_convention();

// Coefficient of <A_x B_y N_e> in I.
double witness_coefficient(std::size_t x, std::size_t y, std::size_t e);

struct WitnessBreakdown {
  double total = 0.0;
  // <I_CHSH^{i,j} N_{i,j}>, indexed [i][j]
  std::array<std::array<double, 2>, 2> conditional_terms{};
  SignConvention signs;

  double conditional_sum() const;
};

WitnessBreakdown eval_witness(const CorrelationTable &t);

// I_CHSH^{i,j} on H_A (x) H_B built from the strategy's observables.
ComplexMatrix conditional_chsh_operator(std::size_t i, std::size_t j, const QuantumStrategy &s);

struct BoundCertificate {
  bool passed = false;
  // min eigenvalue of 2 sqrt2 - I_CHSH^{i,j}, indexed by e = 2i + j
  std::array<double, kEveOutcomes> min_eigenvalues{};
};

// Eigenvalue check that 2 sqrt2 * 1 - I_CHSH^{i,j} is PSD for all (i, j).
BoundCertificate quantum_bound_certificate(const QuantumStrategy &s, double tol = 1e-9);

// The full witness operator sum_{x,y,e} c(x,y,e) A_x (x) B_y (x) N_e on
// (A, B, Abar, Bbar); I = Tr(W rho).
ComplexMatrix witness_operator(const std::array<ComplexMatrix, 2> &alice,
                               const std::array<ComplexMatrix, 2> &bob,
                               const std::array<ComplexMatrix, kEveOutcomes> &eve);

}  // namespace wbl

#endif  // WBL_WITNESS_H
