#ifndef WBL_CORRELATIONS_H
#define WBL_CORRELATIONS_H

#include <array>
#include <cstddef>

#include "wbl/scenario.h"

namespace wbl {

// p(a,b|x,y), indexed [x][y][a][b].
using AbTable = std::array<std::array<std::array<std::array<double, 2>, 2>, 2>, 2>;

AbTable marginal_ab(const CorrelationTable &t);

// p(a|x) computed from the (x, y) block, and p(b|y) likewise.
double alice_marginal(const AbTable &ab, std::size_t x, std::size_t y, std::size_t a);
double bob_marginal(const AbTable &ab, std::size_t x, std::size_t y, std::size_t b);

// <A_x B_y N_e> = p(0,0,e) + p(1,1,e) - p(0,1,e) - p(1,0,e)
double expectation(const CorrelationTable &t, std::size_t x, std::size_t y, std::size_t e);
// <A_x B_y>, Eve summed out.
double correlator(const CorrelationTable &t, std::size_t x, std::size_t y);

struct IndependenceReport {
  // max over (x,y,a,b) of |p(a,b|x,y) - p(a|x) p(b|y)|
  double max_deviation = 0.0;
  std::array<std::size_t, 4> worst_cell{};  // (x, y, a, b)
  // max |p(a|x,b,y) - p(a|x)| and |p(b|y,a,x) - p(b|y)| over cells whose
  // conditioning event has probability above kConditioningFloor.
  double conditional_deviation = 0.0;
  // Spread of p(a|x) over y and of p(b|y) over x.
  double marginal_signaling = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

inline constexpr double kDefaultIndependenceTol = 1e-9;
inline constexpr double kConditioningFloor = 1e-12;

// Table-level operational independence. Passing is decided on the joint
// factorization form only, which is defined even when some p(b|y) vanishes.
IndependenceReport check_operational_independence(const CorrelationTable &t,
                                                  double tol = kDefaultIndependenceTol);

}  // namespace wbl

#endif  // WBL_CORRELATIONS_H
