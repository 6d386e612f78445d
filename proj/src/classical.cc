#include "wbl/classical.h"

#include <cmath>
#include <limits>
#include <sstream>

#include "wbl/correlations.h"
#include "wbl/errors.h"
#include "wbl/witness.h"

namespace wbl {

namespace {

bool responses_ignore_e(const DeterministicStrategy &s) {
  for (std::size_t x = 0; x < 2; ++x) {
    for (std::size_t e = 1; e < kEveOutcomes; ++e) {
      if (s.alice_response[x][e] != s.alice_response[x][0]) return false;
      if (s.bob_response[x][e] != s.bob_response[x][0]) return false;
    }
  }
  return true;
}

bool keep_vertex(const DeterministicStrategy &s, const CorrelationTable &t, VertexFilter filter) {
  switch (filter) {
    case VertexFilter::kNone:
      return true;
    case VertexFilter::kOperationallyIndependent:
      return check_operational_independence(t).passed;
    case VertexFilter::kEveIndependentResponses:
      return responses_ignore_e(s);
  }
  return true;
}

}  // namespace

void validate_lhv(const LhvModel &m) {
  if (m.components.empty()) throw ValidationError("LHV model has no components");
  double total = 0.0;
  for (const auto &c : m.components) {
    if (!(c.weight >= 0.0)) throw ValidationError("LHV model has a negative weight");
    if (c.strategy.eve_outcome >= kEveOutcomes) {
      throw ValidationError("LHV model: Eve's outcome out of range");
    }
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t e = 0; e < kEveOutcomes; ++e)
        if (c.strategy.alice_response[x][e] > 1 || c.strategy.bob_response[x][e] > 1) {
          throw ValidationError("LHV model: responses must be bits");
        }
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "LHV model weights sum to " << total;
    throw ValidationError(os.str());
  }
}

CorrelationTable table_from_vertex(const DeterministicStrategy &v) {
  CorrelationTable t;
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y) t(x, y, v.alice(x), v.bob(y), v.eve_outcome) = 1.0;
  return t;
}

CorrelationTable table_from_lhv(const LhvModel &m) {
  validate_lhv(m);
  CorrelationTable t;
  for (const auto &c : m.components) {
    const DeterministicStrategy &v = c.strategy;
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t y = 0; y < 2; ++y) t(x, y, v.alice(x), v.bob(y), v.eve_outcome) += c.weight;
  }
  return t;
}

std::vector<DeterministicStrategy> enumerate_vertices() {
  std::vector<DeterministicStrategy> out;
  out.reserve(64);
  for (std::uint8_t e = 0; e < kEveOutcomes; ++e) {
    for (unsigned am = 0; am < 4; ++am) {
      for (unsigned bm = 0; bm < 4; ++bm) {
        DeterministicStrategy s;
        s.eve_outcome = e;
        for (std::size_t x = 0; x < 2; ++x) {
          s.alice_response[x][e] = (am >> x) & 1u;
          s.bob_response[x][e] = (bm >> x) & 1u;
        }
        out.push_back(s);
      }
    }
  }
  return out;
}

ClassicalBoundResult classical_bound(VertexFilter filter) {
  ClassicalBoundResult r;
  r.value = -std::numeric_limits<double>::infinity();
  for (const DeterministicStrategy &v : enumerate_vertices()) {
    const CorrelationTable t = table_from_vertex(v);
    if (!keep_vertex(v, t, filter)) continue;
    const double w = eval_witness(t).total;
    r.vertex_values.push_back(w);
    ++r.evaluated;
    if (w > r.value) {
      r.value = w;
      r.argmax = v;
    }
  }
  return r;
}

ClassicalBoundResult classical_bound_exhaustive(VertexFilter filter) {
  ClassicalBoundResult r;
  r.value = -std::numeric_limits<double>::infinity();
  for_each_full_strategy([&](const DeterministicStrategy &v) {
    const CorrelationTable t = table_from_vertex(v);
    if (!keep_vertex(v, t, filter)) return;
    const double w = eval_witness(t).total;
    ++r.evaluated;
    if (w > r.value) {
      r.value = w;
      r.argmax = v;
    }
  });
  return r;
}

BitExample bit_example_model() {
  BitExample ex;
  // lambda is Alice's bit; given lambda, Eve's bit e is uniform and Bob's
  // bit is lambda xor e.
  for (std::uint8_t lambda = 0; lambda < 2; ++lambda) {
    for (std::uint8_t e = 0; e < 2; ++e) {
      DeterministicStrategy s;
      s.eve_outcome = e;
      for (std::size_t x = 0; x < 2; ++x) {
        for (std::size_t ep = 0; ep < kEveOutcomes; ++ep) {
          s.alice_response[x][ep] = lambda;
          s.bob_response[x][ep] = static_cast<std::uint8_t>(lambda ^ (ep & 1u));
        }
      }
      ex.model.components.push_back({0.25, s});
    }
  }
  ex.table = table_from_lhv(ex.model);
  return ex;
}

QuantumStrategy bit_example_strategy() {
  QuantumStrategy s;
  s.dims = SubsystemDims{2, 2, 2, 2};
  // (|00><00| + |11><11|) / 2: the party and Eve hold the same uniform bit.
  const std::array<double, 4> classical_pair{0.5, 0.0, 0.0, 0.5};
  s.source1 = ComplexMatrix::diagonal(classical_pair);
  s.source2 = s.source1;
  s.alice_observables = {pauli::Z(), pauli::Z()};
  s.bob_observables = {pauli::Z(), pauli::Z()};
  const std::array<double, 4> equal{1.0, 0.0, 0.0, 1.0};
  const std::array<double, 4> differ{0.0, 1.0, 1.0, 0.0};
  s.eve_povm = {ComplexMatrix::diagonal(equal), ComplexMatrix::diagonal(differ),
                ComplexMatrix::zeros(4, 4), ComplexMatrix::zeros(4, 4)};
  return s;
}

}  // namespace wbl
