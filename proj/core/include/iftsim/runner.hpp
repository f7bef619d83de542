#pragma once

#include <string>

#include "iftsim/config.hpp"

namespace ift {

struct RunOverrides {
    std::optional<std::string> out_dir;
    std::optional<uint64_t> seed;
    std::optional<int> threads;
    std::optional<bool> verbose;
};

/// Executes one subcommand pipeline (prepare, spectra, adapt, scatter,
/// noise-lab, skewness, compare), writing manifest.json and the result
/// tables into the output directory. Returns the process exit status.
int run_subcommand(const std::string& subcommand, RunConfig config,
                   const RunOverrides& overrides);

} // namespace ift
