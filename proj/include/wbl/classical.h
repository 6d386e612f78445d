#ifndef WBL_CLASSICAL_H
#define WBL_CLASSICAL_H

#include <array>
#include <cstdint>
#include <vector>

#include "wbl/scenario.h"

namespace wbl {

// One deterministic hidden-variable value: Eve outputs `eve_outcome`, and
// Alice/Bob answer with response functions of (input, e).
struct DeterministicStrategy {
  std::uint8_t eve_outcome = 0;
  // [x][e] -> a
  std::array<std::array<std::uint8_t, kEveOutcomes>, 2> alice_response{};
  // [y][e] -> b
  std::array<std::array<std::uint8_t, kEveOutcomes>, 2> bob_response{};

  std::uint8_t alice(std::size_t x) const { return alice_response[x][eve_outcome]; }
  std::uint8_t bob(std::size_t y) const { return bob_response[y][eve_outcome]; }

  bool operator==(const DeterministicStrategy &) const = default;
};

struct WeightedStrategy {
  double weight = 0.0;
  DeterministicStrategy strategy;
};

// p(a,b,e|x,y) = sum_lambda p(lambda) p(a|x,e,lambda) p(b|y,e,lambda) p(e|lambda),
// with each lambda deterministic.
struct LhvModel {
  std::vector<WeightedStrategy> components;
};

// Throws ValidationError unless weights are nonnegative and sum to 1
// within 1e-12, and all responses are bits.
void validate_lhv(const LhvModel &m);

CorrelationTable table_from_lhv(const LhvModel &m);
CorrelationTable table_from_vertex(const DeterministicStrategy &v);

// The 64 vertices that matter: responses at the realized e only, the rest
// pinned to 0.
std::vector<DeterministicStrategy> enumerate_vertices();

// Calls f for every one of the 4 * 2^8 * 2^8 full response assignments.
template <typename F>
void for_each_full_strategy(F &&f) {
  DeterministicStrategy s;
  for (unsigned e = 0; e < kEveOutcomes; ++e) {
    s.eve_outcome = static_cast<std::uint8_t>(e);
    for (unsigned am = 0; am < 256; ++am) {
      for (unsigned k = 0; k < 8; ++k) s.alice_response[k / 4][k % 4] = (am >> k) & 1u;
      for (unsigned bm = 0; bm < 256; ++bm) {
        for (unsigned k = 0; k < 8; ++k) s.bob_response[k / 4][k % 4] = (bm >> k) & 1u;
        f(s);
      }
    }
  }
}

struct ClassicalBoundResult {
  double value = 0.0;
  DeterministicStrategy argmax;
  std::vector<double> vertex_values;  // aligned with the enumerated set
  std::size_t evaluated = 0;
};

enum class VertexFilter {
  kNone,
  // Keep only vertices whose table is operationally independent.
  kOperationallyIndependent,
  // Keep only responses that ignore e (bilocal-style models).
  kEveIndependentResponses,
};

// Maximum of the witness over the 64 reduced vertices.
ClassicalBoundResult classical_bound(VertexFilter filter = VertexFilter::kNone);
// Same maximum over the unreduced response space; vertex_values is left
// empty to avoid storing 262144 numbers.
ClassicalBoundResult classical_bound_exhaustive(VertexFilter filter = VertexFilter::kNone);

struct BitExample {
  LhvModel model;
  CorrelationTable table;
};

// Two uniform source bits, Alice holds the first, Bob the second, and Eve
// learns only whether they are equal (e = 0) or different (e = 1). Outcomes
// 2 and 3 of Eve never occur.
BitExample bit_example_model();

// The same correlations realized with diagonal (classical) quantum sources,
// Z measurements and Eve's parity measurement.
QuantumStrategy bit_example_strategy();

}  // namespace wbl

#endif  // WBL_CLASSICAL_H
