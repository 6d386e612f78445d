#include "wbl/witness.h"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "oracle.h"
#include "wbl/classical.h"
#include "wbl/correlations.h"
#include "wbl/random.h"

using namespace wbl;

namespace {

constexpr double kTsirelson = 2.0 * std::numbers::sqrt2;

// Random point of the probability simplex for every (x, y), Eve marginal
// not necessarily independent of the settings.
CorrelationTable random_table(Rng &rng) {
  std::exponential_distribution<double> exp1(1.0);
  CorrelationTable t;
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y) {
      double total = 0.0;
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
          for (std::size_t e = 0; e < 4; ++e) total += (t(x, y, a, b, e) = exp1(rng));
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
          for (std::size_t e = 0; e < 4; ++e) t(x, y, a, b, e) /= total;
    }
  return t;
}

}  // namespace

TEST(SignConvention, Coefficients) {
  const SignConvention s = sign_convention();
  EXPECT_EQ(s.first_term, (std::array<int, 4>{1, -1, -1, 1}));
  EXPECT_EQ(s.second_term, (std::array<int, 4>{1, 1, -1, -1}));
  EXPECT_EQ(witness_coefficient(0, 1, 0), -1.0);
  EXPECT_EQ(witness_coefficient(0, 1, 1), 1.0);
  EXPECT_EQ(witness_coefficient(1, 1, 2), -1.0);
}

TEST(EvalWitness, ReferenceReachesTsirelson) {
  const WitnessBreakdown w = eval_witness(born_table(reference_strategy()));
  EXPECT_NEAR(w.total, kTsirelson, 1e-12);
  for (const auto &row : w.conditional_terms)
    for (double v : row) EXPECT_NEAR(v, kTsirelson / 4.0, 1e-12);
}

TEST(EvalWitness, UniformIsZero) { EXPECT_DOUBLE_EQ(eval_witness(CorrelationTable::uniform()).total, 0.0); }

TEST(EvalWitness, BitExampleIsZero) { EXPECT_NEAR(eval_witness(bit_example_model().table).total, 0.0, 1e-15); }

TEST(EvalWitness, DecompositionMatchesDirectSumOnRandomTables) {
  Rng rng(500);
  for (int trial = 0; trial < 500; ++trial) {
    const CorrelationTable t = random_table(rng);
    const WitnessBreakdown w = eval_witness(t);
    ASSERT_NEAR(w.conditional_sum(), w.total, 1e-12);
    ASSERT_NEAR(w.total, oracle::witness(t), 1e-12);
  }
}

TEST(EvalWitness, LinearInTheTable) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const CorrelationTable a = random_table(rng), b = random_table(rng);
    const double alpha = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const double mixed = eval_witness(CorrelationTable::mix(a, b, alpha)).total;
    ASSERT_NEAR(mixed, alpha * eval_witness(a).total + (1 - alpha) * eval_witness(b).total, 1e-13);
  }
}

TEST(EvalWitness, RandomQuantumStrategiesStayBelowTsirelson) {
  Rng rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const double v = eval_witness(born_table(random_strategy(SubsystemDims{2, 2, 2, 2}, rng))).total;
    ASSERT_LE(v, kTsirelson + 1e-9);
    ASSERT_GE(v, -kTsirelson - 1e-9);
  }
}

TEST(ConditionalOperator, SpectrumIsPlusMinusTsirelson) {
  const QuantumStrategy s = reference_strategy();
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      const auto ev = eigenvalues(conditional_chsh_operator(i, j, s));
      EXPECT_NEAR(ev.front(), kTsirelson, 1e-12);
      EXPECT_NEAR(ev.back(), -kTsirelson, 1e-12);
    }
}

TEST(ConditionalOperator, BellStatesSaturate) {
  const QuantumStrategy s = reference_strategy();
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      const cplx v = expectation(conditional_chsh_operator(i, j, s), bell_vector(i, j));
      EXPECT_NEAR(v.real(), kTsirelson, 1e-10) << i << j;
      EXPECT_NEAR(v.imag(), 0.0, 1e-12);
    }
}

TEST(ConditionalOperator, CommutingObservables) {
  QuantumStrategy s = reference_strategy();
  s.alice_observables = {pauli::Z(), pauli::Z()};
  s.bob_observables = {pauli::Z(), pauli::Z()};
  const ComplexMatrix zz = kron(pauli::Z(), pauli::Z());
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      const double sign = i == 0 ? 2.0 : -2.0;
      EXPECT_LE(max_abs_diff(conditional_chsh_operator(i, j, s), sign * zz), 1e-15);
    }
}

TEST(ConditionalOperator, WitnessOperatorReproducesBornTable) {
  Rng rng(19);
  for (int trial = 0; trial < 30; ++trial) {
    const QuantumStrategy s = random_strategy(SubsystemDims{2, 2, 2, 2}, rng);
    const ComplexMatrix w = witness_operator(s.alice_observables, s.bob_observables, s.eve_povm);
    ASSERT_NEAR(trace_of_product(w, joint_state(s)).real(), eval_witness(born_table(s)).total, 1e-12);
  }
}

TEST(BoundCertificate, ReferencePasses) {
  const BoundCertificate c = quantum_bound_certificate(reference_strategy());
  EXPECT_TRUE(c.passed);
  for (double m : c.min_eigenvalues) EXPECT_GE(m, -1e-9);
}

TEST(BoundCertificate, RandomObservablesPass) {
  Rng rng(100);
  for (int trial = 0; trial < 100; ++trial) {
    QuantumStrategy s = reference_strategy();
    for (auto &o : s.alice_observables) o = random_dichotomic_observable(2, rng);
    for (auto &o : s.bob_observables) o = random_dichotomic_observable(2, rng);
    const BoundCertificate c = quantum_bound_certificate(s);
    ASSERT_TRUE(c.passed);
  }
}

TEST(BoundCertificate, ContractedObservablesKeepMargin) {
  QuantumStrategy s = reference_strategy();
  s.projective_observables = false;
  for (auto &o : s.alice_observables) o = 0.5 * o;
  const BoundCertificate c = quantum_bound_certificate(s);
  EXPECT_TRUE(c.passed);
  for (double m : c.min_eigenvalues) EXPECT_NEAR(m, kTsirelson / 2.0, 1e-12);
}
