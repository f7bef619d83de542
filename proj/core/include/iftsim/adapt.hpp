#pragma once

#include <optional>
#include <string>
#include <vector>

#include "iftsim/nelder_mead.hpp"
#include "iftsim/pool.hpp"

namespace ift {

/// Ordered (pool operator, angle) list defining U = prod_j exp(i theta_j O_j),
/// applied first step first.
struct AdaptAnsatz {
    PoolId pool = PoolId::O3;
    std::vector<std::pair<int, double>> steps; // (operator index, theta)
};

std::string ansatz_to_json(const OperatorPool& pool, const AdaptAnsatz& ansatz);
AdaptAnsatz ansatz_from_json(const OperatorPool& pool, const std::string& text);

enum class AdaptObjective { TotalEnergy, WindowedEnergy };

struct AdaptOptions {
    int n_steps = 8;
    AdaptObjective objective = AdaptObjective::TotalEnergy;
    int window_lo = 0, window_hi = 0; // inclusive site range for the windowed objective
    NelderMeadOptions nm;
    int threads = 1;
};

struct AdaptStepInfo {
    int selected_op = -1;
    double energy = 0.0;
    double infidelity = -1.0; // vs the supplied reference, if any
    std::vector<double> trial_energies;
    std::vector<bool> trial_failed;
};

struct AdaptResult {
    AdaptAnsatz ansatz;
    double reference_energy = 0.0; // energy of the un-evolved reference state
    std::vector<AdaptStepInfo> steps;
};

/// Applies the ansatz exponentials to a copy of the reference state.
StateVector apply_ansatz(const OperatorPool& pool, const AdaptAnsatz& ansatz,
                         const StateVector& reference);

/// Greedy operator selection: every pool operator is trialed per step with a
/// full warm-started re-optimization of all angles; the lowest energy wins
/// (ties break toward the lower pool index).
AdaptResult adapt_run(const IsingModel& model, const StateVector& reference,
                      const OperatorPool& pool, const AdaptOptions& options,
                      const StateVector* exact_reference = nullptr);

/// The ansatz applied to |0...0>, used as the mitigation reference and for
/// vacuum subtraction.
StateVector prepare_vacuum(const OperatorPool& pool, const AdaptAnsatz& ansatz, int L);

/// Gate-level ansatz circuit (first-order group splitting per operator).
Circuit ansatz_gate_circuit(const OperatorPool& pool, const AdaptAnsatz& ansatz);

} // namespace ift
