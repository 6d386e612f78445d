#include "wbl/correlations.h"

#include <algorithm>
#include <cmath>

#include "wbl/errors.h"

namespace wbl {

AbTable marginal_ab(const CorrelationTable &t) {
  AbTable ab{};
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
          double s = 0.0;
          for (std::size_t e = 0; e < kEveOutcomes; ++e) s += t(x, y, a, b, e);
          ab[x][y][a][b] = s;
        }
  return ab;
}

double alice_marginal(const AbTable &ab, std::size_t x, std::size_t y, std::size_t a) {
  return ab[x][y][a][0] + ab[x][y][a][1];
}

double bob_marginal(const AbTable &ab, std::size_t x, std::size_t y, std::size_t b) {
  return ab[x][y][0][b] + ab[x][y][1][b];
}

double expectation(const CorrelationTable &t, std::size_t x, std::size_t y, std::size_t e) {
  if (x > 1 || y > 1 || e >= kEveOutcomes) throw ConfigError("expectation: index out of range");
  return t(x, y, 0, 0, e) + t(x, y, 1, 1, e) - t(x, y, 0, 1, e) - t(x, y, 1, 0, e);
}

double correlator(const CorrelationTable &t, std::size_t x, std::size_t y) {
  double s = 0.0;
  for (std::size_t e = 0; e < kEveOutcomes; ++e) s += expectation(t, x, y, e);
  return s;
}

IndependenceReport check_operational_independence(const CorrelationTable &t, double tol) {
  if (!(tol > 0.0)) throw ConfigError("check_operational_independence: tolerance must be > 0");
  const AbTable ab = marginal_ab(t);
  IndependenceReport r;
  r.tolerance = tol;
  for (std::size_t x = 0; x < 2; ++x) {
    for (std::size_t y = 0; y < 2; ++y) {
      for (std::size_t a = 0; a < 2; ++a) {
        const double pa = alice_marginal(ab, x, y, a);
        for (std::size_t b = 0; b < 2; ++b) {
          const double pb = bob_marginal(ab, x, y, b);
          const double dev = std::abs(ab[x][y][a][b] - pa * pb);
          if (dev > r.max_deviation) {
            r.max_deviation = dev;
            r.worst_cell = {x, y, a, b};
          }
          if (pb > kConditioningFloor) {
            r.conditional_deviation =
                std::max(r.conditional_deviation, std::abs(ab[x][y][a][b] / pb - pa));
          }
          if (pa > kConditioningFloor) {
            r.conditional_deviation =
                std::max(r.conditional_deviation, std::abs(ab[x][y][a][b] / pa - pb));
          }
        }
      }
    }
  }
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t x = 0; x < 2; ++x) {
      r.marginal_signaling = std::max(
          r.marginal_signaling, std::abs(alice_marginal(ab, x, 0, a) - alice_marginal(ab, x, 1, a)));
      r.marginal_signaling = std::max(
          r.marginal_signaling, std::abs(bob_marginal(ab, 0, x, a) - bob_marginal(ab, 1, x, a)));
    }
  }
  r.passed = r.max_deviation <= tol;
  return r;
}

}  // namespace wbl
