#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iftsim/circuit.hpp"
#include "iftsim/pauli.hpp"

namespace ift {

/// Two-qubit Pauli error channel applied after every two-qubit gate:
/// a 16-outcome categorical over I,X,Y,Z pairs, identity included.
struct PauliNoiseSpec {
    double p_err = 0.0;
    std::array<double, 16> distribution{}; // index = 4*p1 + p2, Pauli order I,X,Y,Z
    double coherent_rzz_overrotation = 0.0;

    /// identity with 1 - p, the 15 non-identity errors uniform.
    static PauliNoiseSpec depolarizing(double p);
    void validate() const;
};

/// Pauli 4-tuples (P1, P2 before; P3, P4 after) that leave a gate invariant
/// up to a global phase at every angle.
struct TwirlSet {
    GateKind gate;
    std::vector<std::array<int, 4>> tuples; // 0=I 1=X 2=Y 3=Z
};

/// RZZ: the 8 tuples preserving the ZZ axis. CZ: all 16 (P1,P2) with the
/// compensating conjugated pair.
TwirlSet twirl_sets(GateKind gate);

struct Observable {
    std::string label;
    std::vector<PauliString> terms;
};

struct NoisyRunResult {
    std::vector<std::string> labels;
    std::vector<double> mean;
    std::vector<double> sigma;                 // bootstrap standard error
    std::vector<std::vector<double>> samples;  // [observable][trajectory]
};

/// Stochastic trajectory sampling: per trajectory each two-qubit gate is
/// followed by a Pauli error drawn from the spec; with twirling a fresh
/// tuple wraps every two-qubit gate. Observables are evaluated exactly on
/// each trajectory's final state. Reproducible for a fixed seed under any
/// thread count.
NoisyRunResult noisy_run(const Circuit& circuit, const PauliNoiseSpec& noise, bool twirling,
                         int shots, uint64_t seed,
                         const std::vector<Observable>& observables, int threads = 1,
                         int bootstrap_n = 200);

struct MitigatedObservable {
    std::string label;
    double p_signal = 0.0; // measured / predicted on the mitigation circuit
    double raw = 0.0;
    double mitigated = 0.0;
    double sigma = 0.0;
    bool usable = true;    // false when filtered (|pred| ~ 0 or p below cutoff)
};

/// Signal-strength rescaling: mitigated = raw_physics / (mit_meas/mit_pred).
/// Observables with p below 0.01 or |pred| < 1e-6 are marked unusable.
std::vector<MitigatedObservable> odr_rescale(const NoisyRunResult& physics,
                                             const NoisyRunResult& mitigation,
                                             const std::vector<double>& mitigation_pred,
                                             int bootstrap_n = 200, uint64_t seed = 7);

/// Multiplicative energy-conservation rescale: E_n * E_tot / sum E.
std::vector<double> energy_rescale(const std::vector<double>& e_odr, double e_total);

/// JSON report of a mitigation run.
std::string mitigation_report_json(const std::vector<MitigatedObservable>& obs);

} // namespace ift
