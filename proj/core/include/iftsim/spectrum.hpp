#pragma once

#include <map>
#include <optional>
#include <vector>

#include "iftsim/ising.hpp"
#include "iftsim/lanczos.hpp"
#include "iftsim/momentum_basis.hpp"
#include "iftsim/wavepacket.hpp"

namespace ift {

/// Lowest eigenstate of one momentum block, with the amplitude of |0...01>
/// rotated real and positive so superpositions across k are well defined.
struct SingleParticleState {
    int k_index = 0;
    double k = 0.0;
    double energy = 0.0; // vacuum subtracted
    StateVector state;
};

struct SpectrumResult {
    IsingModel model;
    double vacuum_energy = 0.0;
    std::vector<SingleParticleState> particle1; // per k_index 0..L-1
    double m1 = 0.0;                            // particle1 energy at k = 0
    double m2 = 0.0;                            // second level at k = 0
    StateVector vacuum_state;
};

/// Exact free-fermion dispersion at g_z = 0: E(k) = 2 sqrt(1 + g^2 - 2 g cos k).
double free_dispersion(double g_x, double k);

/// Small-k form sqrt(m^2 + 4 g_x k^2).
double continuum_dispersion(double m, double g_x, double k);

/// Diagonalizes every momentum block (PBC only).
SpectrumResult single_particle_spectrum(const IsingModel& model,
                                        const LanczosOptions& opts = {});

/// Superposition N sum_k e^{-i k x0} e^{-(k0-k)^2/(4 sigma^2)} |psi_k> of the
/// phase-fixed single-particle states; the reference for state preparation.
StateVector exact_wavepacket(const SpectrumResult& spectrum, const WavepacketSpec& spec);

struct DispersionTable {
    std::vector<double> k_over_pi;
    std::vector<double> energy;
    std::vector<double> velocity; // symmetric finite difference on the k grid
};
DispersionTable dispersion_and_velocity(const SpectrumResult& spectrum);

/// Kinematics of the lowest inelastic channel under a chosen dispersion.
struct Kinematics {
    double m1 = 0.0, m2 = 0.0;
    double e_thr = 0.0;       // m1 + m2
    double k_thr = 0.0;       // E1(k_thr) = e_thr / 2
    double k_out = 0.0;       // 2 E1(k0) = E1(k_out) + E2(k_out)
    double v1_out = 0.0, v2_out = 0.0;
    double p_access = 0.0;    // probability the channel is kinematically open
    double p_access_com = 0.0;
};

/// Uses E_i(k) = sqrt(m_i^2 + 4 g_x k^2). k0, sigma describe the colliding
/// packets. p_access is the probability that both packets carry momentum
/// above threshold; p_access_com applies the centre-of-mass energy criterion
/// E1(ka) + E1(kb) > e_thr instead.
Kinematics inelastic_kinematics(double m1, double m2, double g_x, double k0, double sigma);

/// Three-parameter fit m(L) = m_inf + a exp(-b L).
struct ExponentialFit {
    double m_inf = 0.0, a = 0.0, b = 0.0;
};
ExponentialFit fit_exponential(const std::vector<double>& L, const std::vector<double>& m);

} // namespace ift
