#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "iftsim/circuit.hpp"

namespace ift {

/// Result of running a circuit on one measurement branch.
struct RunOutcome {
    StateVector state;
    std::map<int, int> record;  // register id -> measured bit
    double probability = 1.0;   // product of Born probabilities along the branch
};

/// Samples measurement outcomes from the Born rule; deterministic per seed.
RunOutcome run_sampled(const StateVector& in, const Circuit& c, uint64_t seed);

/// Conditions listed registers on the required bits and renormalizes.
/// Unlisted measurements are branched over; the run fails if their branches
/// do not agree on the final state (a mixed outcome), which indicates a
/// protocol without complete feedforward. Probability is summed over the
/// surviving branches. Throws on a zero-probability requirement.
RunOutcome run_post_selected(const StateVector& in, const Circuit& c,
                             const std::map<int, int>& required);

/// Every measurement branch with its probability; branches below prune_tol
/// are dropped. Probabilities sum to 1 (minus pruned mass).
std::vector<RunOutcome> run_enumerate(const StateVector& in, const Circuit& c,
                                      double prune_tol = 1e-14);

/// Measurement probability of outcome 1 on `site`, then projection.
double project_site(StateVector& psi, int site, int outcome);

/// Applies a measurement-free circuit in place; throws if the circuit
/// contains measurements, resets or conditionals.
void apply_unitary(StateVector& psi, const Circuit& c);

} // namespace ift
