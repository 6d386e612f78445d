#include "wbl/random.h"

#include <cmath>

#include "wbl/errors.h"

namespace wbl {

namespace {

cplx gaussian(Rng &rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

}  // namespace

ComplexMatrix random_unitary(std::size_t n, Rng &rng) {
  ComplexMatrix u(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    CVector col(n);
    for (auto &z : col) z = gaussian(rng);
    for (std::size_t p = 0; p < c; ++p) {
      cplx proj = 0.0;
      for (std::size_t r = 0; r < n; ++r) proj += std::conj(u(r, p)) * col[r];
      for (std::size_t r = 0; r < n; ++r) col[r] -= proj * u(r, p);
    }
    double norm = 0.0;
    for (const auto &z : col) norm += std::norm(z);
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < n; ++r) u(r, c) = col[r] / norm;
  }
  return u;
}

CVector random_pure_state(std::size_t n, Rng &rng) {
  CVector v(n);
  double norm = 0.0;
  for (auto &z : v) {
    z = gaussian(rng);
    norm += std::norm(z);
  }
  norm = std::sqrt(norm);
  for (auto &z : v) z /= norm;
  return v;
}

ComplexMatrix random_hermitian(std::size_t n, Rng &rng) {
  ComplexMatrix g(n, n);
  for (auto &z : g.data()) z = gaussian(rng);
  return hermitian_part(g);
}

ComplexMatrix random_density(std::size_t n, Rng &rng) {
  ComplexMatrix g(n, n);
  for (auto &z : g.data()) z = gaussian(rng);
  ComplexMatrix rho = hermitian_part(g * g.adjoint());
  return rho * (1.0 / rho.trace().real());
}

ComplexMatrix random_dichotomic_observable(std::size_t n, Rng &rng) {
  if (n < 2) throw ConfigError("random_dichotomic_observable: dimension must be >= 2");
  std::vector<double> signs(n);
  std::bernoulli_distribution coin(0.5);
  for (auto &s : signs) s = coin(rng) ? 1.0 : -1.0;
  signs[0] = 1.0;
  signs[1] = -1.0;
  const ComplexMatrix u = random_unitary(n, rng);
  return hermitian_part(u * ComplexMatrix::diagonal(signs) * u.adjoint());
}

std::array<ComplexMatrix, kEveOutcomes> random_projective_povm(std::size_t n, Rng &rng) {
  const ComplexMatrix u = random_unitary(n, rng);
  std::array<ComplexMatrix, kEveOutcomes> povm;
  for (auto &m : povm) m = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    CVector col(n);
    for (std::size_t r = 0; r < n; ++r) col[r] = u(r, k);
    povm[k % kEveOutcomes] += ComplexMatrix::projector(col);
  }
  return povm;
}

std::array<ComplexMatrix, kEveOutcomes> random_product_povm(Rng &rng) {
  const ComplexMatrix ua = random_unitary(2, rng);
  const ComplexMatrix ub = random_unitary(2, rng);
  std::array<ComplexMatrix, kEveOutcomes> povm;
  for (std::size_t p = 0; p < 2; ++p) {
    for (std::size_t q = 0; q < 2; ++q) {
      const CVector a{ua(0, p), ua(1, p)};
      const CVector b{ub(0, q), ub(1, q)};
      povm[2 * p + q] = kron(ComplexMatrix::projector(a), ComplexMatrix::projector(b));
    }
  }
  return povm;
}

QuantumStrategy random_strategy(const SubsystemDims &dims, Rng &rng) {
  QuantumStrategy s;
  s.dims = dims;
  s.source1 = ComplexMatrix::projector(random_pure_state(dims[0] * dims[1], rng));
  s.source2 = ComplexMatrix::projector(random_pure_state(dims[2] * dims[3], rng));
  for (std::size_t x = 0; x < 2; ++x) {
    s.alice_observables[x] = random_dichotomic_observable(dims[0], rng);
    s.bob_observables[x] = random_dichotomic_observable(dims[2], rng);
  }
  s.eve_povm = random_projective_povm(dims[1] * dims[3], rng);
  return s;
}

}  // namespace wbl
