#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "iftsim/adapt.hpp"
#include "iftsim/ising.hpp"
#include "iftsim/noise.hpp"
#include "iftsim/scatter.hpp"

namespace ift {

/// Minimal TOML-style reader: [section] headers, key = value lines with
/// strings, numbers, booleans and flat arrays, and # comments.
struct TomlValue {
    std::variant<bool, double, std::string, std::vector<double>,
                 std::vector<std::string>>
        v;
};
using TomlSection = std::map<std::string, TomlValue>;
using TomlFile = std::map<std::string, TomlSection>;

TomlFile parse_toml(const std::string& text);
TomlFile parse_toml_file(const std::string& path);

/// Fully resolved run configuration; every field has a value after parsing
/// so the manifest can echo the complete effective configuration.
struct RunConfig {
    // [model]
    IsingModel model{12, 1.25, 0.15, Boundary::PBC};
    // [wavepacket]
    double k0_over_pi = 0.32;
    double sigma = 0.13;
    double x0 = -1.0; // negative = centre of the lattice
    int d = 8;
    WConstruction construction = WConstruction::Linear;
    double delta = 0.2;
    // [adapt]
    PoolId pool = PoolId::O3;
    int adapt_steps = 6;
    AdaptObjective objective = AdaptObjective::TotalEnergy;
    int window_pad = 6;
    int optimizer_max_evals = 4000;
    double optimizer_tol = 1e-9;
    std::string ansatz_file; // optional import, replaces training
    // [scatter]
    int separation = 2;
    double dt = 0.25;
    int n_trotter = 8;
    std::vector<double> measure_times;
    bool exact_evolution = false;
    // [noise]
    double p_err = 0.01;
    bool twirling = true;
    int shots = 20000;
    uint64_t seed = 1234;
    double coherent_rzz_overrotation = 0.0;
    // [analysis]
    double cutoff_min = 0.02;
    double cutoff_max = 0.04;
    double cutoff_step = 0.005;
    int bootstrap_n = 200;
    // [compare]
    std::string computed_csv;
    std::string reference_csv;
    std::string compare_column = "E_n";
    double tolerance = 1e-9;
    // [output]
    std::string out_dir = "out";
    int threads = 1;
    bool verbose = false;
};

/// Parses and validates; unknown sections or keys are rejected with the
/// offending name in the message.
RunConfig load_config(const std::string& path);
RunConfig config_from_toml(const TomlFile& toml);

/// The manifest echoes every resolved value; identical inputs give an
/// identical manifest (no timestamps).
std::string manifest_json(const RunConfig& config, const std::string& subcommand,
                          const std::vector<std::string>& outputs);

} // namespace ift
