#pragma once

#include "iftsim/circuit.hpp"
#include "iftsim/ising.hpp"

namespace ift {

/// One second-order step approximating exp(-i H dt): half-step RX layer,
/// full RZ layer, full RZZ bond layer (even bonds then odd bonds), half-step
/// RX layer. Local error is third order in dt.
Circuit trotter_step_circuit(const IsingModel& model, double dt);

/// The individual layers, exposed for composition and for exactness checks
/// of commuting sub-Hamiltonians.
Circuit trotter_rx_layer(const IsingModel& model, double dt, double fraction);
Circuit trotter_rz_layer(const IsingModel& model, double dt);
Circuit trotter_rzz_layer(const IsingModel& model, double dt);

/// psi <- exp(-i H t) psi to machine precision via Krylov propagation; the
/// dense oracle path for Trotter-error studies.
void evolve_exact(const IsingModel& model, double t, StateVector& psi);

} // namespace ift
