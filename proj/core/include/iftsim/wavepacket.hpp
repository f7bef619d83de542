#pragma once

#include <vector>

#include "iftsim/ising.hpp"
#include "iftsim/state_vector.hpp"

namespace ift {

/// Gaussian wavepacket parameters. k0 in radians, sigma the momentum-space
/// width, x0 the centre site (may be half-integer), d the number of sites
/// kept after truncation.
struct WavepacketSpec {
    int L = 0;
    double k0 = 0.0;
    double sigma = 0.0;
    double x0 = 0.0;
    int d = 0;
    Boundary boundary = Boundary::PBC;
};

/// Seed-state coefficients sum_n e^{i phi_n} c_n |2^n> restricted to a
/// contiguous window of d sites starting at window_start.
struct WCoefficients {
    int window_start = 0;
    std::vector<double> c;   // magnitudes, sum c^2 = 1
    std::vector<double> phi; // phases in (-pi, pi]

    int d() const { return static_cast<int>(c.size()); }
    /// Negated phases (the opposite-momentum seed).
    WCoefficients conjugated() const;
};

/// Evaluates c_n e^{i phi_n} = N sum_k e^{-i k x0} e^{-(k0-k)^2/(4 sigma^2)} e^{i k n}
/// over the lattice momenta (periodic momentum distance), truncates to the d
/// sites centred on x0 and renormalizes. Negative k0 is evaluated at +|k0|
/// and phase conjugated, so opposite-momentum packets mirror exactly.
/// Also reports the weight discarded by the truncation.
struct CoefficientResult {
    WCoefficients coeffs;
    double truncated_weight = 0.0;
};
CoefficientResult coefficients(const WavepacketSpec& spec);

/// The seed state embedded on the full L-site register.
StateVector seed_state(const WCoefficients& coeffs, int L);

} // namespace ift
