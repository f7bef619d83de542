#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "iftsim/pauli.hpp"

namespace ift {

using cd = std::complex<double>;

/// Dense statevector over 2^n_qubits amplitudes, little-endian:
/// bit n of the basis index is the value of qubit q_n.
struct StateVector {
    int n_qubits = 0;
    std::vector<cd> amp;

    StateVector() = default;
    explicit StateVector(int n);

    static StateVector zero_state(int n);
    static StateVector basis_state(int n, uint64_t index);

    size_t dim() const { return amp.size(); }
    double norm() const;
    void normalize();
};

/// |<a|b>|^2
double fidelity(const StateVector& a, const StateVector& b);
cd overlap(const StateVector& a, const StateVector& b);

/// <psi| sum_t coeff_t P_t |psi>; real for Hermitian input.
double expval(const StateVector& psi, const std::vector<PauliString>& observable);
cd expval_complex(const StateVector& psi, const std::vector<PauliString>& observable);

/// psi <- (cos(theta) + i sin(theta) P) psi for a single Pauli string P
/// (valid as exp(i theta P) since P^2 = 1; the string coefficient must be +-1
/// or is folded into theta by the caller).
void apply_pauli_exponential(StateVector& psi, const PauliString& unit_string, double theta);

/// out[b'] = in[b] where b' translates every site down by one (q_n -> q_{n-1},
/// q_0 -> q_{L-1}); the convention under which sum_n e^{ikn}|2^n> has
/// translation eigenvalue e^{ik}.
StateVector translated(const StateVector& psi, int shift = 1);

/// Weights w_k = |P_k psi|^2 of the momentum projectors, indexed by
/// m = 0..L-1 with k = 2 pi m / L. Sums to 1 for normalized input.
std::vector<double> momentum_block_weights(const StateVector& psi, int L);

} // namespace ift
