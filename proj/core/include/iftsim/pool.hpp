#pragma once

#include <string>
#include <vector>

#include "iftsim/circuit.hpp"
#include "iftsim/ising.hpp"
#include "iftsim/state_vector.hpp"

namespace ift {

enum class PoolId { O1, O3, O5, O7 };

PoolId pool_from_name(const std::string& name);
std::string pool_name(PoolId id);

/// A translationally-invariant sum of imaginary Hermitian Pauli strings,
/// e.g. sum_n (Y_n Z_{n+1} + Z_n Y_{n+1}).
struct PoolOperator {
    std::string name;                  // e.g. "YZ+ZY"
    std::vector<std::string> patterns; // the symmetrized pattern pair
    std::vector<PauliString> strings;  // placed on the lattice
    double norm_bound = 0.0;           // sum of |coefficients|
    bool commuting = false;            // all strings mutually commute
};

struct OperatorPool {
    PoolId id = PoolId::O3;
    int L = 0;
    Boundary boundary = Boundary::PBC;
    std::vector<PoolOperator> ops;
};

/// Pools generated from nested commutators of the Hamiltonian with sum X_n;
/// O1 in O3 in O5 in O7. Open boundaries drop every string that couples
/// q_0 and q_{L-1}.
OperatorPool build_pool(PoolId id, int L, Boundary boundary);

/// psi <- exp(i theta O) psi, exact. Commuting operators factor into
/// single-string exponentials; the rest go through Krylov propagation.
void apply_pool_exponential(const PoolOperator& op, double theta, StateVector& psi);

/// Gate-level realization of exp(i theta O). The operator's strings are
/// partitioned into internally-commuting groups (greedy colouring); each
/// group is compiled exactly, so the circuit equals the exponential exactly
/// for single-group operators and is a first-order group splitting otherwise.
struct CompiledPoolCircuit {
    Circuit circuit;
    int n_groups = 1;
    int cnot_depth = 0; // two-qubit depth of the emitted circuit
};
CompiledPoolCircuit compile_pool_circuit(const PoolOperator& op, double theta, int L,
                                         Boundary boundary);

/// Splits the operator's strings into internally commuting groups.
std::vector<std::vector<PauliString>> commuting_groups(const PoolOperator& op);

} // namespace ift
