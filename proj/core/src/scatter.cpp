#include "iftsim/scatter.hpp"

#include <algorithm>
#include <cmath>

#include "iftsim/error.hpp"
#include "iftsim/simulate.hpp"

namespace ift {

WConstruction construction_from_name(const std::string& name) {
    if (name == "linear") return WConstruction::Linear;
    if (name == "heavyhex") return WConstruction::Heavyhex;
    if (name == "logdepth") return WConstruction::Logdepth;
    if (name == "mcmff") return WConstruction::Mcmff;
    if (name == "fusion") return WConstruction::Fusion;
    throw InvalidArgument("unknown construction: " + name);
}

std::string construction_name(WConstruction c) {
    switch (c) {
        case WConstruction::Linear: return "linear";
        case WConstruction::Heavyhex: return "heavyhex";
        case WConstruction::Logdepth: return "logdepth";
        case WConstruction::Mcmff: return "mcmff";
        case WConstruction::Fusion: return "fusion";
    }
    return "?";
}

ScatterConfig mirrored_two_packet_config(const IsingModel& model, double k0, double sigma,
                                         int d, int separation) {
    ScatterConfig cfg;
    cfg.model = model;
    cfg.separation = separation;
    const int L = model.L;
    const int span = 2 * d + separation;
    if (span > L) throw InvalidArgument("mirrored config: packets do not fit");
    if ((L - span) % 2 != 0)
        throw InvalidArgument("mirrored config: L - (2d + separation) must be even");
    const int a_left = (L - span) / 2;
    cfg.left = WavepacketSpec{L, k0, sigma, a_left + (d - 1) / 2.0, d, model.boundary};
    cfg.right = WavepacketSpec{L, -k0, sigma, L - 1 - (a_left + (d - 1) / 2.0), d,
                               model.boundary};
    return cfg;
}

namespace {

void check_supports(const WCoefficients& lc, const WCoefficients& rc) {
    const int l_end = lc.window_start + lc.d();
    if (rc.window_start < l_end)
        throw InvalidArgument("packet supports overlap");
}

Circuit seed_circuit(const WCoefficients& coeffs, WConstruction construction) {
    switch (construction) {
        case WConstruction::Linear: return linear_circuit(coeffs);
        case WConstruction::Heavyhex: return heavyhex_circuit(coeffs);
        case WConstruction::Logdepth: return logdepth_circuit(coeffs);
        default:
            throw InvalidArgument(
                "two-wavepacket circuit: measurement-based constructions are built "
                "standalone, use the unitary builders here");
    }
}

} // namespace

Circuit build_two_wavepacket_circuit(const ScatterConfig& config,
                                     WConstruction construction) {
    const int L = config.model.L;
    auto lc = coefficients(config.left).coeffs;
    auto rc = coefficients(config.right).coeffs;
    check_supports(lc, rc);
    Circuit c(L);
    c.append(embedded(seed_circuit(lc, construction), lc.window_start, L));
    c.append(embedded(seed_circuit(rc, construction), rc.window_start, L));
    if (config.pool && !config.ansatz.steps.empty())
        c.append(ansatz_gate_circuit(*config.pool, config.ansatz));
    return c;
}

StateVector prepare_two_wavepacket_state(const ScatterConfig& config) {
    const int L = config.model.L;
    auto lc = coefficients(config.left).coeffs;
    auto rc = coefficients(config.right).coeffs;
    check_supports(lc, rc);
    StateVector psi(L);
    // product of the two single-excitation windows
    for (int i = 0; i < lc.d(); ++i) {
        for (int j = 0; j < rc.d(); ++j) {
            uint64_t b = (uint64_t{1} << (lc.window_start + i)) |
                         (uint64_t{1} << (rc.window_start + j));
            psi.amp[b] = lc.c[i] * std::exp(cd{0.0, lc.phi[i]}) * rc.c[j] *
                         std::exp(cd{0.0, rc.phi[j]});
        }
    }
    psi.normalize();
    if (config.pool && !config.ansatz.steps.empty())
        psi = apply_ansatz(*config.pool, config.ansatz, psi);
    return psi;
}

StateVector prepare_single_wavepacket_state(const ScatterConfig& config) {
    const int L = config.model.L;
    auto lc = coefficients(config.left).coeffs;
    StateVector psi = seed_state(lc, L);
    if (config.pool && !config.ansatz.steps.empty())
        psi = apply_ansatz(*config.pool, config.ansatz, psi);
    return psi;
}

namespace {

EnergyDensityTrace run_trace(const ScatterConfig& config, StateVector packet,
                             bool time_reversed) {
    const IsingModel& model = config.model;
    const int L = model.L;
    StateVector vac = config.pool ? prepare_vacuum(*config.pool, config.ansatz, L)
                                  : StateVector::zero_state(L);
    std::vector<std::vector<PauliString>> hn(L);
    for (int n = 0; n < L; ++n) hn[n] = energy_density_terms(model, n);

    EnergyDensityTrace trace;
    trace.L = L;
    const double dt = time_reversed ? -config.dt : config.dt;
    Circuit step = trotter_step_circuit(model, dt);

    auto measure = [&](double t) {
        trace.times.push_back(t);
        std::vector<double> e(L), r2(L), rv(L);
        double etot = 0.0;
        for (int n = 0; n < L; ++n) {
            r2[n] = expval(packet, hn[n]);
            rv[n] = expval(vac, hn[n]);
            e[n] = r2[n] - rv[n];
            etot += e[n];
        }
        trace.e.push_back(std::move(e));
        trace.raw_two.push_back(std::move(r2));
        trace.raw_vac.push_back(std::move(rv));
        trace.total_energy.push_back(etot);
    };

    std::vector<double> times = config.measure_times;
    std::sort(times.begin(), times.end());
    if (times.empty()) times = {0.0};

    if (config.mode == EvolutionMode::Exact) {
        double t_now = 0.0;
        for (double t : times) {
            double delta = t - t_now;
            if (delta > 0) {
                evolve_exact(model, delta, packet);
                evolve_exact(model, delta, vac);
                t_now = t;
            }
            measure(t);
        }
        return trace;
    }

    int steps_done = 0;
    for (double t : times) {
        double n_real = t / config.dt;
        int n_steps = static_cast<int>(std::lround(n_real));
        if (std::abs(n_real - n_steps) > 1e-9)
            throw InvalidArgument("measure time is not a multiple of dt");
        while (steps_done < n_steps) {
            apply_unitary(packet, step);
            apply_unitary(vac, step);
            ++steps_done;
        }
        measure(n_steps * config.dt);
    }
    return trace;
}

} // namespace

EnergyDensityTrace evolve_and_measure(const ScatterConfig& config, bool time_reversed) {
    ScatterConfig cfg = config;
    if (time_reversed) {
        // swapped packet momenta and backward stepping reproduce the forward
        // process by time-reversal symmetry
        cfg.left.k0 = -config.left.k0;
        cfg.right.k0 = -config.right.k0;
    }
    StateVector packet = prepare_two_wavepacket_state(cfg);
    return run_trace(cfg, std::move(packet), time_reversed);
}

EnergyDensityTrace single_wavepacket_run(const ScatterConfig& config) {
    StateVector packet = prepare_single_wavepacket_state(config);
    return run_trace(config, std::move(packet), false);
}

double centroid_velocity(const EnergyDensityTrace& trace, int window_halfwidth) {
    if (trace.times.size() < 2) throw InvalidArgument("centroid_velocity: need >= 2 times");
    std::vector<double> centroid(trace.times.size());
    for (size_t ti = 0; ti < trace.times.size(); ++ti) {
        const auto& e = trace.e[ti];
        int peak = static_cast<int>(std::max_element(e.begin(), e.end()) - e.begin());
        double num = 0.0, den = 0.0;
        for (int off = -window_halfwidth; off <= window_halfwidth; ++off) {
            int n = ((peak + off) % trace.L + trace.L) % trace.L;
            double w = std::max(e[n], 0.0);
            num += (peak + off) * w; // unwrapped coordinate around the peak
            den += w;
        }
        centroid[ti] = den > 0 ? num / den : peak;
    }
    // least squares slope of centroid vs time
    double st = 0, sc = 0, stt = 0, stc = 0;
    const double n = static_cast<double>(trace.times.size());
    for (size_t i = 0; i < trace.times.size(); ++i) {
        st += trace.times[i];
        sc += centroid[i];
        stt += trace.times[i] * trace.times[i];
        stc += trace.times[i] * centroid[i];
    }
    return (n * stc - st * sc) / (n * stt - st * st);
}

} // namespace ift
