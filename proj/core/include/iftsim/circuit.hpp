#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "iftsim/state_vector.hpp"

namespace ift {

enum class GateKind { X, H, S, Sdg, Htilde, RX, RY, RZ, CNOT, CZ, RZZ, CRY };

bool gate_is_two_qubit(GateKind k);
bool gate_has_angle(GateKind k);
std::string gate_name(GateKind k);
GateKind gate_from_name(const std::string& name);

/// One unitary gate. Two-qubit gates use sites[0], sites[1]; for CNOT and CRY
/// sites[0] is the control. Rotation conventions:
///   RX/RY/RZ(t) = exp(-i t P/2),  RZZ(t) = exp(-i t ZZ/2),  Htilde = S H Sdg.
struct Gate {
    GateKind kind;
    int sites[2] = {-1, -1};
    double angle = 0.0;

    static Gate one(GateKind k, int q, double angle = 0.0);
    static Gate two(GateKind k, int a, int b, double angle = 0.0);
};

struct Measure {
    int site;
    int reg; // classical register id written by this measurement
};

struct Reset {
    int site;
};

/// Classical condition over previously written registers.
struct Predicate {
    enum class Kind { Parity, Match };
    Kind kind = Kind::Parity;
    std::vector<int> regs;
    std::vector<int> bits; // Match: required bit per register
    int parity = 1;        // Parity: required value of (sum regs) mod 2

    bool holds(const std::vector<int>& record) const;
};

struct Conditional {
    Predicate pred;
    Gate gate;
};

using Op = std::variant<Gate, Measure, Reset, Conditional>;

struct Circuit {
    int n_qubits = 0;
    std::vector<Op> ops;

    explicit Circuit(int n = 0) : n_qubits(n) {}

    Circuit& add(const Op& op);
    Circuit& gate(GateKind k, int q, double angle = 0.0);
    Circuit& gate2(GateKind k, int a, int b, double angle = 0.0);
    Circuit& measure(int site, int reg);
    Circuit& reset(int site);
    Circuit& conditional(Predicate pred, Gate g);
    void append(const Circuit& other);

    int n_measurements() const;
    int max_register() const;

    /// Number of two-qubit gates (CNOT, CZ, RZZ; CRY counts as 2).
    int two_qubit_count() const;
    /// Two-qubit depth by ASAP scheduling; CRY occupies 2 layers on its pair.
    int two_qubit_depth() const;
};

/// Same circuit with every site index shifted by `offset` on an
/// `n_total`-qubit register; register ids shifted by `reg_offset`.
Circuit embedded(const Circuit& c, int offset, int n_total, int reg_offset = 0);

void apply_gate(StateVector& psi, const Gate& g);

/// JSON round trip for circuit files.
std::string circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const std::string& text);

} // namespace ift
