#pragma once

#include <vector>

#include "iftsim/pauli.hpp"

namespace ift {

enum class Boundary { PBC, OBC };

/// One-dimensional Ising field theory couplings on an L-site chain,
///   H = -sum_n [ 1/2 (Z_{n-1} Z_n + Z_n Z_{n+1}) + g_x X_n + g_z Z_n ],
/// with the wrap bond dropped under open boundaries.
struct IsingModel {
    int L = 0;
    double g_x = 0.0;
    double g_z = 0.0;
    Boundary boundary = Boundary::PBC;
};

void validate(const IsingModel& model);

/// All terms of H after merging the two half-weighted contributions per bond
/// into a single ZZ term of coefficient -1.
std::vector<PauliString> hamiltonian_terms(const IsingModel& model);

/// The site-local energy density H_n. Summed over n it reproduces
/// hamiltonian_terms term for term. Under OBC the edge densities H_0 and
/// H_{L-1} own their boundary bond outright (single ZZ term, no 1/2), and
/// their interior neighbours carry no share of that bond.
std::vector<PauliString> energy_density_terms(const IsingModel& model, int n);

/// Scaling-invariant combination (g_x - 1) / |g_z|^(8/15).
double scaling_ratio(const IsingModel& model);

} // namespace ift
