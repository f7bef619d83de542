#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace ift {

enum class LatticeHalf { Left, Right };

struct Window {
    int lo = 0, hi = 0; // inclusive
    int size() const { return hi - lo + 1; }
};

/// Maximal contiguous run of sites on the chosen half with E + sigma >= eps
/// (ties between runs break toward the larger total energy). Empty optional
/// when no site clears the cutoff.
std::optional<Window> select_window(const std::vector<double>& e,
                                    const std::vector<double>& sigma_e, double eps,
                                    LatticeHalf half);

/// Normalized third central moment of the indexed profile.
double skewness(const std::vector<double>& e, int index_offset = 0);

struct SkewnessReport {
    std::vector<double> cutoffs;
    std::vector<double> gamma_eps;           // per cutoff; NaN when no window
    double gamma = 0.0;                      // (max + min) / 2 over valid cutoffs
    double cutoff_spread = 0.0;              // (max - min) / 2
    double sigma_bootstrap = 0.0;
    double error = 0.0;                      // quadrature combination
    bool zeroed = false;                     // peak at L/2 or no window anywhere
};

/// Sweeps the cutoff range (inclusive, fixed step), computing gamma per
/// cutoff on the chosen half. gamma is set to 0 when the profile peaks at
/// L/2 or no cutoff yields a window. Bootstrap resamples perturb E with the
/// supplied per-site sigmas.
SkewnessReport skewness_sweep(const std::vector<double>& e,
                              const std::vector<double>& sigma_e, double cutoff_min,
                              double cutoff_max, double cutoff_step, LatticeHalf half,
                              int bootstrap_n = 200, uint64_t seed = 11);

} // namespace ift
