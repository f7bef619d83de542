#include "iftsim/runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include "iftsim/csv.hpp"
#include "iftsim/error.hpp"
#include "iftsim/simulate.hpp"
#include "iftsim/skewness.hpp"
#include "iftsim/spectrum.hpp"

namespace ift {

namespace fs = std::filesystem;

namespace {

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << text;
}

WavepacketSpec packet_spec(const RunConfig& cfg) {
    WavepacketSpec spec;
    spec.L = cfg.model.L;
    spec.k0 = cfg.k0_over_pi * std::numbers::pi;
    spec.sigma = cfg.sigma;
    spec.x0 = cfg.x0 >= 0 ? cfg.x0 : (cfg.model.L - 1) / 2.0;
    spec.d = cfg.d;
    spec.boundary = cfg.model.boundary;
    return spec;
}

std::vector<Observable> energy_observables(const IsingModel& model) {
    std::vector<Observable> obs;
    for (int n = 0; n < model.L; ++n) {
        obs.push_back({"Z" + std::to_string(n),
                       {PauliString(1.0, {{n, Pauli::Z}})}});
        obs.push_back({"X" + std::to_string(n),
                       {PauliString(1.0, {{n, Pauli::X}})}});
    }
    const int n_bonds = model.boundary == Boundary::PBC ? model.L : model.L - 1;
    for (int n = 0; n < n_bonds; ++n) {
        obs.push_back(
            {"ZZ" + std::to_string(n),
             {PauliString(1.0, {{n, Pauli::Z}, {(n + 1) % model.L, Pauli::Z}})}});
    }
    return obs;
}

AdaptAnsatz train_or_load_ansatz(const RunConfig& cfg, const OperatorPool& pool,
                                 const StateVector& reference, double* final_energy) {
    if (!cfg.ansatz_file.empty()) {
        std::ifstream in(cfg.ansatz_file);
        if (!in) throw ConfigError("cannot open ansatz file: " + cfg.ansatz_file);
        std::stringstream buf;
        buf << in.rdbuf();
        if (final_energy) *final_energy = std::nan("");
        return ansatz_from_json(pool, buf.str());
    }
    AdaptOptions opts;
    opts.n_steps = cfg.adapt_steps;
    opts.objective = cfg.objective;
    if (cfg.objective == AdaptObjective::WindowedEnergy) {
        auto spec = packet_spec(cfg);
        int start = static_cast<int>(std::lround(spec.x0 - (spec.d - 1) / 2.0));
        opts.window_lo = start - cfg.window_pad / 2;
        opts.window_hi = start + spec.d - 1 + cfg.window_pad / 2;
    }
    opts.nm.max_evals = cfg.optimizer_max_evals;
    opts.nm.f_tol = cfg.optimizer_tol;
    opts.threads = cfg.threads;
    auto result = adapt_run(cfg.model, reference, pool, opts);
    if (final_energy)
        *final_energy = result.steps.empty() ? result.reference_energy
                                             : result.steps.back().energy;
    return result.ansatz;
}

int cmd_prepare(const RunConfig& cfg, const fs::path& out) {
    auto spec = packet_spec(cfg);
    auto coeff = coefficients(spec);
    Circuit circ(0);
    double p_predicted = 1.0, infid_predicted = 0.0;
    double p_simulated = 1.0, infid_simulated = 0.0;
    StateVector target = seed_state(coeff.coeffs, spec.d >= 1 ? spec.d : 1);
    {
        // target on the window-local register
        WCoefficients local = coeff.coeffs;
        local.window_start = 0;
        target = seed_state(local, spec.d);
    }
    switch (cfg.construction) {
        case WConstruction::Linear: circ = linear_circuit(coeff.coeffs); break;
        case WConstruction::Heavyhex: circ = heavyhex_circuit(coeff.coeffs); break;
        case WConstruction::Logdepth: circ = logdepth_circuit(coeff.coeffs); break;
        case WConstruction::Mcmff: {
            auto mc = mcmff_circuit(coeff.coeffs, cfg.delta);
            circ = mc.circuit;
            p_predicted = predict_success(coeff.coeffs, cfg.delta);
            infid_predicted = predict_infidelity(coeff.coeffs, cfg.delta);
            auto outc = run_post_selected(StateVector::zero_state(circ.n_qubits), circ,
                                          {{mc.parity_reg, 1}});
            p_simulated = outc.probability;
            infid_simulated = 1.0 - fidelity(outc.state, target);
            break;
        }
        case WConstruction::Fusion: {
            auto fc = fusion_circuit(coeff.coeffs);
            circ = fc.circuit;
            p_predicted = fc.predicted_success;
            auto outc = run_post_selected(StateVector::zero_state(circ.n_qubits), circ,
                                          {{fc.reg_u, 1}});
            p_simulated = outc.probability;
            infid_simulated = 1.0 - fidelity(outc.state, target);
            break;
        }
    }
    if (cfg.construction == WConstruction::Linear ||
        cfg.construction == WConstruction::Heavyhex ||
        cfg.construction == WConstruction::Logdepth) {
        StateVector psi = StateVector::zero_state(circ.n_qubits);
        apply_unitary(psi, circ);
        if (circ.n_qubits > spec.d) {
            // drop the ancilla (highest qubit, returned to |0>)
            StateVector reduced(spec.d);
            for (uint64_t b = 0; b < reduced.dim(); ++b) reduced.amp[b] = psi.amp[b];
            psi = reduced;
        }
        infid_simulated = 1.0 - fidelity(psi, target);
    }
    write_text(out / "circuit.json", circuit_to_json(circ));
    CsvTable t;
    t.header = {"quantity", "predicted", "simulated"};
    t.add_row(std::vector<std::string>{"p_success", format_double(p_predicted),
                                       format_double(p_simulated)});
    t.add_row(std::vector<std::string>{"infidelity", format_double(infid_predicted),
                                       format_double(infid_simulated)});
    t.add_row(std::vector<std::string>{"truncated_weight",
                                       format_double(coeff.truncated_weight), ""});
    t.add_row(std::vector<std::string>{
        "two_qubit_depth", std::to_string(circ.two_qubit_depth()), ""});
    t.add_row(std::vector<std::string>{
        "two_qubit_count", std::to_string(circ.two_qubit_count()), ""});
    csv_write_file((out / "results.csv").string(), t);
    return 0;
}

int cmd_spectra(const RunConfig& cfg, const fs::path& out) {
    auto spectrum = single_particle_spectrum(cfg.model);
    auto table = dispersion_and_velocity(spectrum);
    CsvTable t;
    t.header = {"k_over_pi", "E", "v"};
    for (size_t i = 0; i < table.k_over_pi.size(); ++i)
        t.add_row(std::vector<double>{table.k_over_pi[i], table.energy[i],
                                      table.velocity[i]});
    csv_write_file((out / "dispersion.csv").string(), t);

    auto kin = inelastic_kinematics(spectrum.m1, spectrum.m2, cfg.model.g_x,
                                    cfg.k0_over_pi * std::numbers::pi, cfg.sigma);
    CsvTable k;
    k.header = {"quantity", "value"};
    k.add_row(std::vector<std::string>{"m1", format_double(spectrum.m1)});
    k.add_row(std::vector<std::string>{"m2", format_double(spectrum.m2)});
    k.add_row(std::vector<std::string>{"E_thr", format_double(kin.e_thr)});
    k.add_row(std::vector<std::string>{"E_thr_over_m1", format_double(kin.e_thr / spectrum.m1)});
    k.add_row(std::vector<std::string>{"k_thr_over_pi",
                                       format_double(kin.k_thr / std::numbers::pi)});
    k.add_row(std::vector<std::string>{"k_out_over_pi",
                                       format_double(kin.k_out / std::numbers::pi)});
    k.add_row(std::vector<std::string>{"v1_out", format_double(kin.v1_out)});
    k.add_row(std::vector<std::string>{"v2_out", format_double(kin.v2_out)});
    k.add_row(std::vector<std::string>{"P_access", format_double(kin.p_access)});
    k.add_row(std::vector<std::string>{"P_access_com", format_double(kin.p_access_com)});
    k.add_row(std::vector<std::string>{"vacuum_energy", format_double(spectrum.vacuum_energy)});
    csv_write_file((out / "kinematics.csv").string(), k);
    return 0;
}

int cmd_adapt(const RunConfig& cfg, const fs::path& out) {
    auto pool = build_pool(cfg.pool, cfg.model.L, cfg.model.boundary);
    auto spec = packet_spec(cfg);
    auto coeff = coefficients(spec);
    StateVector reference = seed_state(coeff.coeffs, cfg.model.L);

    AdaptOptions opts;
    opts.n_steps = cfg.adapt_steps;
    opts.objective = cfg.objective;
    if (cfg.objective == AdaptObjective::WindowedEnergy) {
        opts.window_lo = coeff.coeffs.window_start - cfg.window_pad / 2;
        opts.window_hi = coeff.coeffs.window_start + spec.d - 1 + cfg.window_pad / 2;
    }
    opts.nm.max_evals = cfg.optimizer_max_evals;
    opts.nm.f_tol = cfg.optimizer_tol;
    opts.threads = cfg.threads;

    const StateVector* exact_ref = nullptr;
    StateVector exact;
    if (cfg.model.boundary == Boundary::PBC && cfg.model.L <= 16) {
        auto spectrum = single_particle_spectrum(cfg.model);
        exact = exact_wavepacket(spectrum, spec);
        exact_ref = &exact;
    }
    auto result = adapt_run(cfg.model, reference, pool, opts, exact_ref);

    write_text(out / "ansatz.json", ansatz_to_json(pool, result.ansatz));
    CsvTable t;
    t.header = {"step", "operator", "theta_last", "energy", "infidelity"};
    for (size_t s = 0; s < result.steps.size(); ++s) {
        const auto& info = result.steps[s];
        t.add_row(std::vector<std::string>{
            std::to_string(s + 1), pool.ops[info.selected_op].name,
            format_double(result.ansatz.steps[s].second), format_double(info.energy),
            format_double(info.infidelity)});
    }
    csv_write_file((out / "results.csv").string(), t);
    return 0;
}

int cmd_scatter(const RunConfig& cfg, const fs::path& out, bool single) {
    auto pool = build_pool(cfg.pool, cfg.model.L, cfg.model.boundary);
    ScatterConfig sc = mirrored_two_packet_config(
        cfg.model, cfg.k0_over_pi * std::numbers::pi, cfg.sigma, cfg.d, cfg.separation);
    sc.pool = &pool;
    sc.dt = cfg.dt;
    sc.mode = cfg.exact_evolution ? EvolutionMode::Exact : EvolutionMode::Trotter;
    sc.measure_times = cfg.measure_times;
    if (sc.measure_times.empty()) {
        for (int n = 0; n <= cfg.n_trotter; ++n) sc.measure_times.push_back(n * cfg.dt);
    }
    double final_energy = 0.0;
    StateVector reference = prepare_two_wavepacket_state(sc); // seeds only for training
    {
        ScatterConfig seed_only = sc;
        seed_only.pool = nullptr;
        reference = prepare_two_wavepacket_state(seed_only);
    }
    sc.ansatz = train_or_load_ansatz(cfg, pool, reference, &final_energy);

    EnergyDensityTrace trace =
        single ? single_wavepacket_run(sc) : evolve_and_measure(sc);
    CsvTable t;
    t.header = {"t", "n", "E_n", "E_n_raw_2wp", "E_n_raw_vac"};
    for (size_t ti = 0; ti < trace.times.size(); ++ti) {
        for (int n = 0; n < trace.L; ++n) {
            t.add_row(std::vector<double>{trace.times[ti], static_cast<double>(n),
                                          trace.e[ti][n], trace.raw_two[ti][n],
                                          trace.raw_vac[ti][n]});
        }
    }
    csv_write_file((out / "results.csv").string(), t);
    CsvTable e;
    e.header = {"t", "E_total"};
    for (size_t ti = 0; ti < trace.times.size(); ++ti)
        e.add_row(std::vector<double>{trace.times[ti], trace.total_energy[ti]});
    csv_write_file((out / "total_energy.csv").string(), e);
    return 0;
}

int cmd_noise_lab(const RunConfig& cfg, const fs::path& out) {
    auto pool = build_pool(cfg.pool, cfg.model.L, cfg.model.boundary);
    ScatterConfig sc = mirrored_two_packet_config(
        cfg.model, cfg.k0_over_pi * std::numbers::pi, cfg.sigma, cfg.d, cfg.separation);
    sc.pool = &pool;
    sc.dt = cfg.dt;
    StateVector seeds;
    {
        ScatterConfig seed_only = sc;
        seed_only.pool = nullptr;
        seeds = prepare_two_wavepacket_state(seed_only);
    }
    sc.ansatz = train_or_load_ansatz(cfg, pool, seeds, nullptr);

    Circuit physics = build_two_wavepacket_circuit(sc);
    Circuit mitigation(cfg.model.L);
    mitigation.append(ansatz_gate_circuit(pool, sc.ansatz));
    Circuit step = trotter_step_circuit(cfg.model, cfg.dt);
    for (int n = 0; n < cfg.n_trotter; ++n) {
        physics.append(step);
        mitigation.append(step);
    }

    auto noise = PauliNoiseSpec::depolarizing(cfg.p_err);
    noise.coherent_rzz_overrotation = cfg.coherent_rzz_overrotation;
    auto obs = energy_observables(cfg.model);
    auto phys = noisy_run(physics, noise, cfg.twirling, cfg.shots, cfg.seed, obs,
                          cfg.threads, cfg.bootstrap_n);
    auto mit = noisy_run(mitigation, noise, cfg.twirling, cfg.shots, cfg.seed + 1, obs,
                         cfg.threads, cfg.bootstrap_n);
    // noiseless predictions for the mitigation circuit
    StateVector ideal = StateVector::zero_state(cfg.model.L);
    apply_unitary(ideal, mitigation);
    std::vector<double> pred(obs.size());
    for (size_t i = 0; i < obs.size(); ++i) pred[i] = expval(ideal, obs[i].terms);
    auto mitigated = odr_rescale(phys, mit, pred, cfg.bootstrap_n, cfg.seed + 2);
    write_text(out / "mitigation.json", mitigation_report_json(mitigated));
    return 0;
}

int cmd_skewness(const RunConfig& cfg, const fs::path& out) {
    if (cfg.computed_csv.empty())
        throw ConfigError("[compare] computed must point at a scatter results.csv");
    CsvTable in = csv_read_file(cfg.computed_csv);
    int ct = in.column("t"), cn = in.column("n"), ce = in.column("E_n");
    if (ct < 0 || cn < 0 || ce < 0)
        throw ConfigError("skewness input needs columns t, n, E_n");
    std::map<double, std::vector<double>> traces;
    for (size_t r = 0; r < in.rows.size(); ++r) {
        double t = in.value(r, ct);
        auto& e = traces[t];
        size_t n = static_cast<size_t>(in.value(r, cn));
        if (e.size() <= n) e.resize(n + 1, 0.0);
        e[n] = in.value(r, ce);
    }
    CsvTable t;
    t.header = {"t", "gamma", "error", "cutoff_spread", "sigma_bootstrap", "zeroed"};
    for (const auto& [time, e] : traces) {
        auto rep = skewness_sweep(e, {}, cfg.cutoff_min, cfg.cutoff_max, cfg.cutoff_step,
                                  LatticeHalf::Left, cfg.bootstrap_n, cfg.seed);
        t.add_row(std::vector<double>{time, rep.gamma, rep.error, rep.cutoff_spread,
                                      rep.sigma_bootstrap, rep.zeroed ? 1.0 : 0.0});
    }
    csv_write_file((out / "skewness.csv").string(), t);
    return 0;
}

int cmd_compare(const RunConfig& cfg, const fs::path& out) {
    CsvTable a = csv_read_file(cfg.computed_csv);
    CsvTable b = csv_read_file(cfg.reference_csv);
    int ca = a.column(cfg.compare_column), cb = b.column(cfg.compare_column);
    if (ca < 0 || cb < 0)
        throw ConfigError("compare: column '" + cfg.compare_column + "' missing");
    size_t n = std::min(a.rows.size(), b.rows.size());
    CsvTable t;
    t.header = {"row", "computed", "reference", "delta"};
    double max_abs = 0.0;
    size_t worst = 0;
    for (size_t r = 0; r < n; ++r) {
        double va = a.value(r, ca), vb = b.value(r, cb);
        double delta = va - vb;
        if (std::abs(delta) > max_abs) {
            max_abs = std::abs(delta);
            worst = r;
        }
        t.add_row(std::vector<double>{static_cast<double>(r), va, vb, delta});
    }
    csv_write_file((out / "diff.csv").string(), t);
    std::cout << "compared " << n << " rows on column " << cfg.compare_column
              << ": max |delta| = " << format_double(max_abs) << " at row " << worst
              << (max_abs <= cfg.tolerance ? " (within tolerance)" : " (EXCEEDS tolerance)")
              << "\n";
    return max_abs <= cfg.tolerance ? 0 : 1;
}

} // namespace

int run_subcommand(const std::string& subcommand, RunConfig cfg,
                   const RunOverrides& overrides) {
    if (overrides.out_dir) cfg.out_dir = *overrides.out_dir;
    if (overrides.seed) cfg.seed = *overrides.seed;
    if (overrides.threads) cfg.threads = *overrides.threads;
    if (overrides.verbose) cfg.verbose = *overrides.verbose;

    fs::path out(cfg.out_dir);
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw ConfigError("cannot create output directory: " + out.string());

    int status = 0;
    std::vector<std::string> outputs;
    if (subcommand == "prepare") {
        status = cmd_prepare(cfg, out);
        outputs = {"circuit.json", "results.csv"};
    } else if (subcommand == "spectra") {
        status = cmd_spectra(cfg, out);
        outputs = {"dispersion.csv", "kinematics.csv"};
    } else if (subcommand == "adapt") {
        status = cmd_adapt(cfg, out);
        outputs = {"ansatz.json", "results.csv"};
    } else if (subcommand == "scatter") {
        status = cmd_scatter(cfg, out, false);
        outputs = {"results.csv", "total_energy.csv"};
    } else if (subcommand == "scatter-single") {
        status = cmd_scatter(cfg, out, true);
        outputs = {"results.csv", "total_energy.csv"};
    } else if (subcommand == "noise-lab") {
        status = cmd_noise_lab(cfg, out);
        outputs = {"mitigation.json"};
    } else if (subcommand == "skewness") {
        status = cmd_skewness(cfg, out);
        outputs = {"skewness.csv"};
    } else if (subcommand == "compare") {
        status = cmd_compare(cfg, out);
        outputs = {"diff.csv"};
    } else {
        throw ConfigError("unknown subcommand: " + subcommand);
    }
    write_text(out / "manifest.json", manifest_json(cfg, subcommand, outputs));
    return status;
}

} // namespace ift
