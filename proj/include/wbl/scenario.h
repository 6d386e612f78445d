#ifndef WBL_SCENARIO_H
#define WBL_SCENARIO_H

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "wbl/linalg.h"

namespace wbl {

inline constexpr std::size_t kEveOutcomes = 4;

// Index of Eve's outcome for the Bell-basis label (i, j).
constexpr std::size_t eve_outcome(std::size_t i, std::size_t j) { return 2 * i + j; }

// Two sources and the measurement devices of the weak-bilocality network.
//
//   source1 lives on A (x) Abar, source2 on B (x) Bbar, and Eve holds
//   Abar (x) Bbar. `dims` lists the local dimensions in the order
//   (A, Abar, B, Bbar).
//
// Alice and Bob are described by their +-1 observables; the two-outcome
// POVMs are derived as (1 +- O)/2 in `outcome_projector`.
struct QuantumStrategy {
  SubsystemDims dims{2, 2, 2, 2};
  ComplexMatrix source1;
  ComplexMatrix source2;
  std::array<ComplexMatrix, 2> alice_observables;
  std::array<ComplexMatrix, 2> bob_observables;
  std::array<ComplexMatrix, kEveOutcomes> eve_povm;
  // When set, observables must also square to the identity.
  bool projective_observables = true;

  std::size_t dim_a() const { return dims[0]; }
  std::size_t dim_abar() const { return dims[1]; }
  std::size_t dim_b() const { return dims[2]; }
  std::size_t dim_bbar() const { return dims[3]; }
  std::size_t dim_eve() const { return dims[1] * dims[3]; }
};

// Result of checking every QuantumStrategy invariant.
struct StrategyCheck {
  bool ok = true;
  std::vector<std::string> failures;
};

StrategyCheck check_strategy(const QuantumStrategy &s, const Tolerances &tol = kTol);
// Throws ValidationError listing the failed checks.
void validate_strategy(const QuantumStrategy &s, const Tolerances &tol = kTol);

// Dimensions of the joint state in the (A, B, Abar, Bbar) ordering.
SubsystemDims joint_dims(const QuantumStrategy &s);

// N_{a|x} = (1 + (-1)^a O_x) / 2
ComplexMatrix outcome_projector(const ComplexMatrix &observable, std::size_t outcome);

// p(a,b,e|x,y) for x,y,a,b in {0,1} and e in {0..3}.
class CorrelationTable {
 public:
  static constexpr std::size_t kCells = 2 * 2 * 2 * 2 * kEveOutcomes;

  CorrelationTable() { p_.fill(0.0); }

  static CorrelationTable uniform();

  double &operator()(std::size_t x, std::size_t y, std::size_t a, std::size_t b, std::size_t e) {
    return p_[index(x, y, a, b, e)];
  }
  double operator()(std::size_t x, std::size_t y, std::size_t a, std::size_t b,
                    std::size_t e) const {
    return p_[index(x, y, a, b, e)];
  }

  const std::array<double, kCells> &cells() const { return p_; }
  std::array<double, kCells> &cells() { return p_; }

  // p(e|x,y)
  double eve_marginal(std::size_t x, std::size_t y, std::size_t e) const;
  double setting_total(std::size_t x, std::size_t y) const;

  // alpha * a + (1 - alpha) * b
  static CorrelationTable mix(const CorrelationTable &a, const CorrelationTable &b, double alpha);

  bool operator==(const CorrelationTable &) const = default;

  static constexpr std::size_t index(std::size_t x, std::size_t y, std::size_t a, std::size_t b,
                                     std::size_t e) {
    return (((x * 2 + y) * 2 + a) * 2 + b) * kEveOutcomes + e;
  }

 private:
  std::array<double, kCells> p_{};
};

struct TableCheck {
  bool ok = true;
  double min_entry = 0.0;
  double max_entry = 0.0;
  double normalization_defect = 0.0;  // max over (x,y) of |sum - 1|
  double eve_signaling = 0.0;         // max spread of p(e|x,y) over (x,y)
  std::vector<std::string> failures;
};

TableCheck check_table(const CorrelationTable &t, double entry_slack = 1e-12,
                       double tol = kTol.normalization);

// Density matrix on (A, B, Abar, Bbar).
ComplexMatrix joint_state(const QuantumStrategy &s);

// Born rule for a strategy; validates it first.
CorrelationTable born_table(const QuantumStrategy &s);

// Born rule for an arbitrary joint state on (A, B, Abar, Bbar), used when the
// sources are not of product form.
CorrelationTable born_table(const ComplexMatrix &rho_abe, const SubsystemDims &dims_abe,
                            const std::array<ComplexMatrix, 2> &alice_observables,
                            const std::array<ComplexMatrix, 2> &bob_observables,
                            const std::array<ComplexMatrix, kEveOutcomes> &eve_povm);

// |phi_{i,j}> = (|i j> + (-1)^i |1-i 1-j>) / sqrt(2)
CVector bell_vector(std::size_t i, std::size_t j);
CVector phi_plus();
std::array<ComplexMatrix, kEveOutcomes> bell_povm();
// {|00>, |01>, |10>, |11>} projectors.
std::array<ComplexMatrix, kEveOutcomes> computational_povm();

// A0 = Z, A1 = X, B0 = (Z+X)/sqrt2, B1 = (X-Z)/sqrt2, both sources phi+,
// Eve in the Bell basis.
QuantumStrategy reference_strategy();

ComplexMatrix werner_state(double visibility);
// Reference measurements with Werner sources. Throws ConfigError unless
// both visibilities lie in [0, 1].
QuantumStrategy werner_strategy(double v1, double v2);

}  // namespace wbl

#endif  // WBL_SCENARIO_H
