#include "wbl/classical.h"

#include <set>

#include "gtest/gtest.h"
#include "wbl/correlations.h"
#include "wbl/errors.h"
#include "wbl/random.h"
#include "wbl/witness.h"

using namespace wbl;

TEST(Vertices, SixtyFourDistinctDeterministicTables) {
  const auto vertices = enumerate_vertices();
  ASSERT_EQ(vertices.size(), 64u);
  std::set<std::array<double, CorrelationTable::kCells>> tables;
  for (const auto &v : vertices) {
    const CorrelationTable t = table_from_vertex(v);
    ASSERT_TRUE(check_table(t).ok);
    for (double p : t.cells()) ASSERT_TRUE(p == 0.0 || p == 1.0);
    tables.insert(t.cells());
  }
  EXPECT_EQ(tables.size(), 64u);
}

TEST(ClassicalBound, ReducedVerticesGiveTwo) {
  const ClassicalBoundResult r = classical_bound();
  EXPECT_EQ(r.value, 2.0);
  EXPECT_EQ(r.evaluated, 64u);
  for (double v : r.vertex_values) EXPECT_LE(v, 2.0);
  EXPECT_EQ(eval_witness(table_from_vertex(r.argmax)).total, 2.0);
}

TEST(ClassicalBound, EveIndependentResponsesGiveTwo) {
  EXPECT_EQ(classical_bound(VertexFilter::kEveIndependentResponses).value, 2.0);
}

TEST(ClassicalBound, OperationallyIndependentVerticesStayBelowTwo) {
  EXPECT_LE(classical_bound(VertexFilter::kOperationallyIndependent).value, 2.0);
}

TEST(ClassicalBound, ExhaustiveSearchGivesTwo) {
  const ClassicalBoundResult r = classical_bound_exhaustive();
  EXPECT_EQ(r.value, 2.0);
  EXPECT_EQ(r.evaluated, 262144u);
  EXPECT_TRUE(r.vertex_values.empty());
}

TEST(ClassicalBound, RandomMixturesNeverExceedTwo) {
  Rng rng(1000);
  const auto vertices = enumerate_vertices();
  std::uniform_int_distribution<std::size_t> pick(0, vertices.size() - 1);
  std::exponential_distribution<double> exp1(1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    LhvModel m;
    double total = 0.0;
    for (int k = 0; k < 6; ++k) {
      const double w = exp1(rng);
      total += w;
      m.components.push_back({w, vertices[pick(rng)]});
    }
    for (auto &c : m.components) c.weight /= total;
    const CorrelationTable t = table_from_lhv(m);
    ASSERT_LE(eval_witness(t).total, 2.0 + 1e-12);
  }
}

TEST(LhvModel, UniformMixtureOfAllVertices) {
  LhvModel m;
  for (const auto &v : enumerate_vertices()) m.components.push_back({1.0 / 64.0, v});
  const CorrelationTable t = table_from_lhv(m);
  const AbTable ab = marginal_ab(t);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y) {
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) EXPECT_NEAR(ab[x][y][a][b], 0.25, 1e-15);
      for (std::size_t e = 0; e < 4; ++e) EXPECT_NEAR(t.eve_marginal(x, y, e), 0.25, 1e-15);
    }
}

TEST(LhvModel, EveMarginalNeverSignals) {
  Rng rng(4);
  const auto vertices = enumerate_vertices();
  std::uniform_int_distribution<std::size_t> pick(0, vertices.size() - 1);
  for (int trial = 0; trial < 100; ++trial) {
    LhvModel m;
    for (int k = 0; k < 4; ++k) m.components.push_back({0.25, vertices[pick(rng)]});
    ASSERT_LE(check_table(table_from_lhv(m)).eve_signaling, 1e-15);
  }
}

TEST(LhvModel, ValidationRejectsBadWeightsAndResponses) {
  LhvModel m;
  m.components.push_back({0.7, {}});
  EXPECT_THROW(validate_lhv(m), ValidationError);
  m.components.push_back({0.3, {}});
  EXPECT_NO_THROW(validate_lhv(m));
  m.components[1].weight = -0.3;
  m.components[0].weight = 1.3;
  EXPECT_THROW(validate_lhv(m), ValidationError);
  m.components[0].weight = 0.7;
  m.components[1].weight = 0.3;
  m.components[1].strategy.alice_response[0][0] = 2;
  EXPECT_THROW(validate_lhv(m), ValidationError);
  m.components[1].strategy.alice_response[0][0] = 0;
  m.components[1].strategy.eve_outcome = 4;
  EXPECT_THROW(validate_lhv(m), ValidationError);
}

TEST(BitExample, CellValues) {
  const CorrelationTable t = bit_example_model().table;
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
          for (std::size_t e = 0; e < 4; ++e) {
            const double expected = (e < 2 && e == (a ^ b)) ? 0.25 : 0.0;
            ASSERT_EQ(t(x, y, a, b, e), expected);
          }
}

TEST(BitExample, IndependentAndClassical) {
  const BitExample ex = bit_example_model();
  EXPECT_NO_THROW(validate_lhv(ex.model));
  EXPECT_TRUE(check_operational_independence(ex.table, 1e-15).passed);
  EXPECT_EQ(eval_witness(ex.table).total, 0.0);
  // Each component is a product of response functions given (lambda, e).
  for (const auto &c : ex.model.components) EXPECT_LT(c.strategy.eve_outcome, 2);
}

TEST(BitExample, QuantumRealizationMatches) {
  const QuantumStrategy s = bit_example_strategy();
  EXPECT_TRUE(check_strategy(s).ok);
  const CorrelationTable q = born_table(s);
  const CorrelationTable c = bit_example_model().table;
  for (std::size_t k = 0; k < CorrelationTable::kCells; ++k) EXPECT_NEAR(q.cells()[k], c.cells()[k], 1e-15);
}
