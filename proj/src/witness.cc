#include "wbl/witness.h"

#include "wbl/correlations.h"
#include "wbl/errors.h"

namespace wbl {

SignConvention sign_convention() {
  SignConvention s;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const std::size_t e = eve_outcome(i, j);
      s.first_term[e] = ((i + j) % 2 == 0) ? 1 : -1;
      s.second_term[e] = (i == 0) ? 1 : -1;
    }
  }
  return s;
}

double witness_coefficient(std::size_t x, std::size_t y, std::size_t e) {
  const SignConvention s = sign_convention();
  if (x == 0) return y == 0 ? s.first_term[e] : -s.first_term[e];
  return s.second_term[e];
}

double WitnessBreakdown::conditional_sum() const {
  return conditional_terms[0][0] + conditional_terms[0][1] + conditional_terms[1][0] +
         conditional_terms[1][1];
}

WitnessBreakdown eval_witness(const CorrelationTable &t) {
  WitnessBreakdown w;
  w.signs = sign_convention();

  // Direct form: Eve's observables E0, E1 as outcome-weighted sums.
  static constexpr std::array<int, kEveOutcomes> kE0{1, -1, -1, 1};
  static constexpr std::array<int, kEveOutcomes> kE1{1, 1, -1, -1};
  double total = 0.0;
  for (std::size_t e = 0; e < kEveOutcomes; ++e) {
    total += kE0[e] * (expectation(t, 0, 0, e) - expectation(t, 0, 1, e));
    total += kE1[e] * (expectation(t, 1, 0, e) + expectation(t, 1, 1, e));
  }
  w.total = total;

  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const std::size_t e = eve_outcome(i, j);
      w.conditional_terms[i][j] =
          w.signs.first_term[e] * (expectation(t, 0, 0, e) - expectation(t, 0, 1, e)) +
          w.signs.second_term[e] * (expectation(t, 1, 0, e) + expectation(t, 1, 1, e));
    }
  }
  return w;
}

ComplexMatrix conditional_chsh_operator(std::size_t i, std::size_t j, const QuantumStrategy &s) {
  if (i > 1 || j > 1) throw ConfigError("conditional_chsh_operator: (i, j) must be bits");
  const auto &a = s.alice_observables;
  const auto &b = s.bob_observables;
  const SignConvention signs = sign_convention();
  const std::size_t e = eve_outcome(i, j);
  return static_cast<double>(signs.first_term[e]) * kron(a[0], b[0] - b[1]) +
         static_cast<double>(signs.second_term[e]) * kron(a[1], b[0] + b[1]);
}

BoundCertificate quantum_bound_certificate(const QuantumStrategy &s, double tol) {
  BoundCertificate cert;
  cert.passed = true;
  const std::size_t dim = s.dim_a() * s.dim_b();
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const ComplexMatrix gap =
          kQuantumBound * ComplexMatrix::identity(dim) - conditional_chsh_operator(i, j, s);
      const double lo = min_eigenvalue(hermitian_part(gap));
      cert.min_eigenvalues[eve_outcome(i, j)] = lo;
      if (lo < -tol) cert.passed = false;
    }
  }
  return cert;
}

ComplexMatrix witness_operator(const std::array<ComplexMatrix, 2> &alice,
                               const std::array<ComplexMatrix, 2> &bob,
                               const std::array<ComplexMatrix, kEveOutcomes> &eve) {
  const std::size_t dim = alice[0].rows() * bob[0].rows() * eve[0].rows();
  ComplexMatrix w(dim, dim);
  for (std::size_t x = 0; x < 2; ++x) {
    for (std::size_t y = 0; y < 2; ++y) {
      const ComplexMatrix ab = kron(alice[x], bob[y]);
      for (std::size_t e = 0; e < kEveOutcomes; ++e) {
        w += witness_coefficient(x, y, e) * kron(ab, eve[e]);
      }
    }
  }
  return w;
}

}  // namespace wbl
