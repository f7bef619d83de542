#pragma once

#include "iftsim/circuit.hpp"
#include "iftsim/wavepacket.hpp"

namespace ift {

/// Circuit builders for the seed state sum_n e^{i phi_n} c_n |2^n> on d
/// qubits (window-local indices). All builders append the RZ phase layer.

/// RY/CNOT ladder grown outward from the centre site. Works for any d; even
/// d is built through a zero-amplitude pad site that is dropped from the
/// emitted circuit. CNOT depth <= 2 floor(d/2) + 2.
Circuit linear_circuit(const WCoefficients& coeffs);

/// Ancilla-assisted construction for d = 2 mod 4 (d >= 6). The ancilla is
/// qubit index d and returns to |0>. CNOT depth 7 + 2 ceil((d-2)/4).
Circuit heavyhex_circuit(const WCoefficients& coeffs);

/// Doubling-tree construction assuming all-to-all connectivity.
/// CNOT depth 2 ceil(log2 d).
Circuit logdepth_circuit(const WCoefficients& coeffs);

/// Constant-depth preparation via mid-circuit measurement and feedforward.
/// Post-select parity_reg == 1; the even-site register count is d even.
struct McmffCircuit {
    Circuit circuit;
    int parity_reg = 0;
};
McmffCircuit mcmff_circuit(const WCoefficients& coeffs, double delta);

/// Two half-size preparations fused by a Bell measurement. Success is
/// outcome reg_u == 1 (the {10, 11} outcomes); the 11 branch carries a
/// feedforward Z product. For packets without equal half weights a
/// fidelity-preserving split is used and `asymmetric_split` is set.
struct FusionCircuit {
    Circuit circuit;
    int reg_u = 0;
    int reg_v = 1;
    bool asymmetric_split = false;
    double predicted_success = 0.5;
};
FusionCircuit fusion_circuit(const WCoefficients& coeffs);

/// Exact product formulas for the constant-depth protocol.
double predict_success(const WCoefficients& coeffs, double delta);
/// 1 - (single-excitation weight of the post-selected state); equals the
/// overlap infidelity exactly for uniform pair weights and to O(delta^3)
/// otherwise.
double predict_infidelity(const WCoefficients& coeffs, double delta);

} // namespace ift
