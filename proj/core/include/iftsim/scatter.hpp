#pragma once

#include <optional>
#include <vector>

#include "iftsim/adapt.hpp"
#include "iftsim/trotter.hpp"
#include "iftsim/wstate.hpp"

namespace ift {

enum class WConstruction { Linear, Heavyhex, Logdepth, Mcmff, Fusion };
WConstruction construction_from_name(const std::string& name);
std::string construction_name(WConstruction c);

enum class EvolutionMode { Trotter, Exact };

struct ScatterConfig {
    IsingModel model;
    WavepacketSpec left;   // +k0 packet
    WavepacketSpec right;  // -k0 packet (momentum sign applied internally)
    int separation = 2;    // sites between the two supports
    const OperatorPool* pool = nullptr;
    AdaptAnsatz ansatz;    // may be empty
    double dt = 0.1;
    EvolutionMode mode = EvolutionMode::Trotter;
    std::vector<double> measure_times; // multiples of dt in Trotter mode
};

/// Places the left window at x0_left and mirrors the right one so the whole
/// state is reflection symmetric about the chain centre.
ScatterConfig mirrored_two_packet_config(const IsingModel& model, double k0, double sigma,
                                         int d, int separation);

struct EnergyDensityTrace {
    int L = 0;
    std::vector<double> times;
    std::vector<std::vector<double>> e;         // vacuum subtracted, [time][site]
    std::vector<std::vector<double>> raw_two;   // two-wavepacket (or single) raw
    std::vector<std::vector<double>> raw_vac;   // vacuum reference raw
    std::vector<double> total_energy;           // of the evolving packet state
};

/// Gate circuit preparing the two seeds followed by the gate-level ansatz.
Circuit build_two_wavepacket_circuit(const ScatterConfig& config,
                                     WConstruction construction = WConstruction::Linear);

/// The packet seeds (left with +k0, right with conjugated phases) followed by
/// the exact ansatz exponentials.
StateVector prepare_two_wavepacket_state(const ScatterConfig& config);
StateVector prepare_single_wavepacket_state(const ScatterConfig& config);

/// Evolves the packet state and the matching vacuum through identical
/// schedules and records E_n(t) = <H_n>_packet - <H_n>_vac. In Trotter mode
/// measure_times must be multiples of dt. time_reversed swaps the packet
/// momenta and steps with -dt, an equivalent simulation of the same process.
EnergyDensityTrace evolve_and_measure(const ScatterConfig& config,
                                      bool time_reversed = false);
EnergyDensityTrace single_wavepacket_run(const ScatterConfig& config);

/// Least-squares velocity of the packet centroid (argmax-refined window).
double centroid_velocity(const EnergyDensityTrace& trace, int window_halfwidth = 4);

} // namespace ift
