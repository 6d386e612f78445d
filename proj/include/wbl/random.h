#ifndef WBL_RANDOM_H
#define WBL_RANDOM_H

#include <random>

#include "wbl/linalg.h"
#include "wbl/scenario.h"

namespace wbl {

using Rng = std::mt19937_64;

// Gram-Schmidt on complex Gaussian columns.
ComplexMatrix random_unitary(std::size_t n, Rng &rng);
CVector random_pure_state(std::size_t n, Rng &rng);
ComplexMatrix random_hermitian(std::size_t n, Rng &rng);
// Random density matrix of full rank (Ginibre, normalized).
ComplexMatrix random_density(std::size_t n, Rng &rng);
// U diag(+-1) U^dagger with both signs present.
ComplexMatrix random_dichotomic_observable(std::size_t n, Rng &rng);
// Rank-one projectors onto the columns of a random unitary, column k
// assigned to outcome k mod 4.
std::array<ComplexMatrix, kEveOutcomes> random_projective_povm(std::size_t n, Rng &rng);
// Random product basis {|u_p> (x) |w_q>} of two qubits, e = 2p + q.
std::array<ComplexMatrix, kEveOutcomes> random_product_povm(Rng &rng);

// Pure sources, projective observables and a random rank-one Eve basis.
QuantumStrategy random_strategy(const SubsystemDims &dims, Rng &rng);

}  // namespace wbl

#endif  // WBL_RANDOM_H
