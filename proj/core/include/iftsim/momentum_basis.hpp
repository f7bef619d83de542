#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "iftsim/pauli.hpp"
#include "iftsim/state_vector.hpp"

namespace ift {

/// Orbit decomposition of the computational basis under one-site translation.
/// Representatives are the minimal bitstrings of each orbit.
struct TranslationOrbits {
    int L = 0;
    std::vector<uint32_t> reps;       // orbit representatives
    std::vector<int> orbit_len;       // per orbit
    std::vector<int32_t> orbit_of;    // full table: basis state -> orbit index
    std::vector<int8_t> shift_of;     // basis state = rotl^shift(rep)
};

TranslationOrbits build_orbits(int L);

/// Orthonormal basis of the momentum-k block, k = 2 pi k_index / L. Basis
/// vector j is (1/sqrt(len_j)) sum_t e^{i k t} rotl^t |rep_j>. Orbits whose
/// length is incompatible with k are excluded.
struct MomentumBasis {
    int L = 0;
    int k_index = 0;
    std::vector<int> orbit_ids; // into TranslationOrbits
    std::vector<uint32_t> reps;
    std::vector<int> lens;

    int dim() const { return static_cast<int>(reps.size()); }
    double k() const;
};

MomentumBasis momentum_basis(const TranslationOrbits& orbits, int k_index);

/// Block matrix of sum_t coeff_t P_t in the momentum basis (Hermitian for
/// real coefficients and translation-invariant input).
Eigen::SparseMatrix<cd> block_matrix(const TranslationOrbits& orbits,
                                     const MomentumBasis& basis,
                                     const std::vector<PauliString>& terms);

/// Expands a block-basis vector to the full 2^L space.
StateVector lift_to_full(const MomentumBasis& basis, const Eigen::VectorXcd& v);

/// Projects a full-space state onto the block basis.
Eigen::VectorXcd project_to_block(const TranslationOrbits& orbits,
                                  const MomentumBasis& basis, const StateVector& psi);

} // namespace ift
