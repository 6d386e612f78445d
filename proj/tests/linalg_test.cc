#include "wbl/linalg.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "wbl/errors.h"
#include "wbl/random.h"
#include "wbl/scenario.h"

using namespace wbl;

namespace {

CVector basis(std::size_t n, std::size_t k) {
  CVector v(n, 0.0);
  v[k] = 1.0;
  return v;
}

std::vector<double> eigen_oracle(const ComplexMatrix &m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(e);
  std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + m.rows());
  std::sort(out.rbegin(), out.rend());
  return out;
}

}  // namespace

TEST(Kron, IdentityTimesIdentity) {
  EXPECT_EQ(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)), ComplexMatrix::identity(4));
}

TEST(Kron, ZTimesXHasSignedBlocks) {
  const ComplexMatrix k = kron(pauli::Z(), pauli::X());
  const ComplexMatrix x = pauli::X();
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      EXPECT_EQ(k(i, j), x(i, j));
      EXPECT_EQ(k(2 + i, 2 + j), -x(i, j));
      EXPECT_EQ(k(i, 2 + j), cplx(0.0));
      EXPECT_EQ(k(2 + i, j), cplx(0.0));
    }
  }
}

TEST(Kron, ProjectorProduct) {
  const ComplexMatrix p0 = ComplexMatrix::projector(basis(2, 0));
  const ComplexMatrix p1 = ComplexMatrix::projector(basis(2, 1));
  EXPECT_EQ(kron(p0, p1), ComplexMatrix::projector(basis(4, 1)));
}

TEST(Kron, TraceIsMultiplicative) {
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix a = random_hermitian(2 + trial % 3, rng);
    const ComplexMatrix b = random_hermitian(2 + trial % 4, rng);
    EXPECT_NEAR(std::abs(kron(a, b).trace() - a.trace() * b.trace()), 0.0, 1e-10);
  }
}

TEST(PartialTrace, MaximallyEntangledMarginal) {
  const ComplexMatrix phi = ComplexMatrix::projector(phi_plus());
  const ComplexMatrix r = partial_trace(phi, SubsystemDims{2, 2}, {0});
  EXPECT_LE(max_abs_diff(r, 0.5 * ComplexMatrix::identity(2)), 1e-15);
}

TEST(PartialTrace, ProductStateMarginal) {
  Rng rng(3);
  const ComplexMatrix ra = random_density(3, rng);
  const ComplexMatrix rb = random_density(2, rng);
  const ComplexMatrix r = partial_trace(kron(ra, rb), SubsystemDims{3, 2}, {1});
  EXPECT_LE(max_abs_diff(r, rb), 1e-14);
}

TEST(PartialTrace, JointReferenceStateOverEveByDirectSummation) {
  // rho on (A, B, Abar, Bbar); Tr over Abar, Bbar by explicit summation.
  const ComplexMatrix rho = joint_state(reference_strategy());
  ComplexMatrix direct(4, 4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c)
      for (std::size_t e = 0; e < 4; ++e) direct(r, c) += rho(4 * r + e, 4 * c + e);
  EXPECT_LE(max_abs_diff(direct, 0.25 * ComplexMatrix::identity(4)), 1e-15);
  const ComplexMatrix reduced = partial_trace(rho, SubsystemDims{2, 2, 2, 2}, {0, 1});
  EXPECT_LE(max_abs_diff(reduced, direct), 1e-15);
}

TEST(PartialTrace, NestedTracesEqualFullTrace) {
  Rng rng(11);
  const SubsystemDims dims{2, 3, 2};
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix m = random_hermitian(12, rng);
    for (std::size_t k = 0; k < 3; ++k) {
      const ComplexMatrix single = partial_trace(m, dims, {k});
      EXPECT_NEAR(std::abs(single.trace() - m.trace()), 0.0, 1e-12);
    }
    const ComplexMatrix pair = partial_trace(m, dims, {0, 2});
    const ComplexMatrix last = partial_trace(pair, SubsystemDims{2, 2}, {1});
    EXPECT_NEAR(std::abs(last.trace() - m.trace()), 0.0, 1e-12);
  }
}

TEST(PartialTrace, DimensionMismatchIsConfigError) {
  EXPECT_THROW(partial_trace(ComplexMatrix::identity(4), SubsystemDims{2, 3}, {0}), ConfigError);
  EXPECT_THROW(partial_trace(ComplexMatrix::identity(4), SubsystemDims{2, 2}, {2}), ConfigError);
  EXPECT_THROW(partial_trace(ComplexMatrix(4, 2), SubsystemDims{2, 2}, {0}), ConfigError);
}

TEST(PermuteSubsystems, IdentityPermutation) {
  Rng rng(5);
  const ComplexMatrix m = random_hermitian(8, rng);
  EXPECT_EQ(permute_subsystems(m, SubsystemDims{2, 2, 2}, {0, 1, 2}), m);
}

TEST(PermuteSubsystems, SwapRelabelsBasis) {
  const ComplexMatrix p01 = ComplexMatrix::projector(basis(4, 1));
  const ComplexMatrix p10 = ComplexMatrix::projector(basis(4, 2));
  EXPECT_EQ(permute_subsystems(p01, SubsystemDims{2, 2}, {1, 0}), p10);
}

TEST(PermuteSubsystems, SwapIsInvolution) {
  Rng rng(9);
  const ComplexMatrix m = random_hermitian(6, rng);
  const ComplexMatrix once = permute_subsystems(m, SubsystemDims{2, 3}, {1, 0});
  EXPECT_EQ(permute_subsystems(once, SubsystemDims{3, 2}, {1, 0}), m);
}

TEST(PermuteSubsystems, MatchesKronOrderSwap) {
  Rng rng(13);
  const ComplexMatrix a = random_hermitian(2, rng), b = random_hermitian(3, rng), c = random_hermitian(2, rng);
  const ComplexMatrix abc = kron({&a, &b, &c});
  const ComplexMatrix cab = kron({&c, &a, &b});
  EXPECT_LE(max_abs_diff(permute_subsystems(abc, SubsystemDims{2, 3, 2}, {2, 0, 1}), cab), 1e-15);
}

TEST(PermuteSubsystems, PreservesSpectrum) {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix m = random_hermitian(8, rng);
    const auto before = eigenvalues(m);
    const auto after = eigenvalues(permute_subsystems(m, SubsystemDims{2, 2, 2}, {2, 0, 1}));
    for (std::size_t k = 0; k < before.size(); ++k) EXPECT_NEAR(before[k], after[k], 1e-9);
  }
}

TEST(PermuteSubsystems, InvalidPermutationIsConfigError) {
  const ComplexMatrix m = ComplexMatrix::identity(4);
  EXPECT_THROW(permute_subsystems(m, SubsystemDims{2, 2}, {0, 0}), ConfigError);
  EXPECT_THROW(permute_subsystems(m, SubsystemDims{2, 2}, {0, 2}), ConfigError);
  EXPECT_THROW(permute_subsystems(m, SubsystemDims{2, 2}, {0}), ConfigError);
}

TEST(HermitianEig, PauliZ) {
  const auto ev = eigenvalues(pauli::Z());
  ASSERT_EQ(ev.size(), 2u);
  EXPECT_DOUBLE_EQ(ev[0], 1.0);
  EXPECT_DOUBLE_EQ(ev[1], -1.0);
}

TEST(HermitianEig, Identity) {
  for (double l : eigenvalues(ComplexMatrix::identity(4))) EXPECT_DOUBLE_EQ(l, 1.0);
}

TEST(HermitianEig, ChshOperatorExtremes) {
  const QuantumStrategy s = reference_strategy();
  const auto &a = s.alice_observables;
  const auto &b = s.bob_observables;
  const ComplexMatrix chsh = kron(a[0], b[0] - b[1]) + kron(a[1], b[0] + b[1]);
  const auto ev = eigenvalues(chsh);
  EXPECT_NEAR(ev.front(), 2.0 * std::numbers::sqrt2, 1e-12);
  EXPECT_NEAR(ev.back(), -2.0 * std::numbers::sqrt2, 1e-12);
}

TEST(HermitianEig, ReconstructsRandomMatricesAndMatchesEigen) {
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + trial % 15;
    const ComplexMatrix m = random_hermitian(n, rng);
    const EigenDecomposition eig = hermitian_eig(m);
    const ComplexMatrix rebuilt = eig.vectors * ComplexMatrix::diagonal(eig.values) * eig.vectors.adjoint();
    ASSERT_LE(frobenius_norm(rebuilt - m), 1e-9) << "n=" << n;
    ASSERT_TRUE(is_unitary(eig.vectors, 1e-9));
    ASSERT_TRUE(std::is_sorted(eig.values.rbegin(), eig.values.rend()));
    if (trial % 10 == 0) {
      const auto oracle = eigen_oracle(m);
      for (std::size_t k = 0; k < n; ++k) ASSERT_NEAR(eig.values[k], oracle[k], 1e-9);
    }
  }
}

TEST(HermitianEig, DegenerateSpectrum) {
  Rng rng(4);
  const ComplexMatrix u = random_unitary(6, rng);
  const std::vector<double> d{2.0, 2.0, 2.0, -1.0, -1.0, 0.5};
  const ComplexMatrix m = hermitian_part(u * ComplexMatrix::diagonal(d) * u.adjoint());
  const EigenDecomposition eig = hermitian_eig(m);
  const std::vector<double> expected{2.0, 2.0, 2.0, 0.5, -1.0, -1.0};
  for (std::size_t k = 0; k < 6; ++k) EXPECT_NEAR(eig.values[k], expected[k], 1e-12);
}

TEST(HermitianEig, RejectsNonHermitian) {
  const ComplexMatrix m{{1.0, 2.0}, {0.0, 1.0}};
  EXPECT_THROW(hermitian_eig(m), PreconditionError);
  EXPECT_THROW(hermitian_eig(ComplexMatrix(2, 3)), PreconditionError);
}

TEST(ValidatePovm, ComputationalBasis) {
  const std::array<ComplexMatrix, 2> povm{ComplexMatrix::projector(basis(2, 0)), ComplexMatrix::projector(basis(2, 1))};
  EXPECT_TRUE(validate_povm(povm).valid);
}

TEST(ValidatePovm, DoubleIdentityFailsCompleteness) {
  const std::array<ComplexMatrix, 2> povm{ComplexMatrix::identity(2), ComplexMatrix::identity(2)};
  const PovmDiagnostics d = validate_povm(povm);
  EXPECT_FALSE(d.valid);
  EXPECT_NEAR(d.completeness_defect, 1.0, 1e-15);
}

TEST(ValidatePovm, BellProjectorsAreOrthonormalAndComplete) {
  for (std::size_t e = 0; e < 4; ++e) {
    for (std::size_t f = 0; f < 4; ++f) {
      const cplx ip = inner(bell_vector(e / 2, e % 2), bell_vector(f / 2, f % 2));
      EXPECT_NEAR(std::abs(ip - (e == f ? 1.0 : 0.0)), 0.0, 1e-15);
    }
  }
  EXPECT_TRUE(validate_povm(bell_povm()).valid);
}

TEST(ValidatePovm, NegativeElementFails) {
  const std::array<ComplexMatrix, 2> povm{2.0 * ComplexMatrix::projector(basis(2, 0)),
                                          ComplexMatrix::identity(2) - 2.0 * ComplexMatrix::projector(basis(2, 0))};
  const PovmDiagnostics d = validate_povm(povm);
  EXPECT_FALSE(d.valid);
  EXPECT_NEAR(d.min_eigenvalue, -1.0, 1e-12);
  EXPECT_EQ(d.worst_element, 1u);
}

TEST(PartialTranspose, PhiPlusIsNpt) {
  const ComplexMatrix pt = partial_transpose(ComplexMatrix::projector(phi_plus()), SubsystemDims{2, 2}, 1);
  EXPECT_NEAR(min_eigenvalue(pt), -0.5, 1e-12);
  const ComplexMatrix pt0 = partial_transpose(ComplexMatrix::projector(phi_plus()), SubsystemDims{2, 2}, 0);
  EXPECT_NEAR(min_eigenvalue(pt0), -0.5, 1e-12);
}

TEST(SubsystemDims, RejectsTrivialFactor) {
  EXPECT_THROW(SubsystemDims({2, 1}), ConfigError);
  EXPECT_EQ((SubsystemDims{2, 3, 4}).total(), 24u);
}
