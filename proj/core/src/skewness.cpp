#include "iftsim/skewness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "iftsim/error.hpp"

namespace ift {

std::optional<Window> select_window(const std::vector<double>& e,
                                    const std::vector<double>& sigma_e, double eps,
                                    LatticeHalf half) {
    if (!sigma_e.empty() && sigma_e.size() != e.size())
        throw InvalidArgument("select_window: array sizes differ");
    const int L = static_cast<int>(e.size());
    const int lo = half == LatticeHalf::Left ? 0 : L / 2;
    const int hi = half == LatticeHalf::Left ? L / 2 - 1 : L - 1;
    std::optional<Window> best;
    double best_mass = -1e300;
    int n = lo;
    while (n <= hi) {
        double s = sigma_e.empty() ? 0.0 : sigma_e[n];
        if (e[n] + s >= eps) {
            int start = n;
            double mass = 0.0;
            while (n <= hi && e[n] + (sigma_e.empty() ? 0.0 : sigma_e[n]) >= eps) {
                mass += e[n];
                ++n;
            }
            Window w{start, n - 1};
            if (!best || w.size() > best->size() ||
                (w.size() == best->size() && mass > best_mass)) {
                best = w;
                best_mass = mass;
            }
        } else {
            ++n;
        }
    }
    return best;
}

double skewness(const std::vector<double>& e, int index_offset) {
    if (e.size() < 3) throw InvalidArgument("skewness: window must span >= 3 sites");
    double total = 0.0;
    for (double v : e) total += v;
    if (total <= 0.0) throw InvalidArgument("skewness: window energy must be positive");
    double mu = 0.0;
    for (size_t j = 0; j < e.size(); ++j) mu += (index_offset + static_cast<double>(j)) * e[j] / total;
    double var = 0.0, third = 0.0;
    for (size_t j = 0; j < e.size(); ++j) {
        double x = index_offset + static_cast<double>(j) - mu;
        var += x * x * e[j] / total;
        third += x * x * x * e[j] / total;
    }
    if (var <= 0.0) throw InvalidArgument("skewness: degenerate window (zero variance)");
    return third / std::pow(var, 1.5);
}

namespace {

struct SweepCore {
    std::vector<double> gammas;
    bool any_window = false;
};

SweepCore sweep_once(const std::vector<double>& e, const std::vector<double>& sigma_e,
                     const std::vector<double>& cutoffs, LatticeHalf half) {
    SweepCore out;
    for (double eps : cutoffs) {
        auto w = select_window(e, sigma_e, eps, half);
        if (!w || w->size() < 3) {
            out.gammas.push_back(std::numeric_limits<double>::quiet_NaN());
            continue;
        }
        std::vector<double> win(e.begin() + w->lo, e.begin() + w->hi + 1);
        double tot = 0.0;
        for (double v : win) tot += v;
        if (tot <= 0.0) {
            out.gammas.push_back(std::numeric_limits<double>::quiet_NaN());
            continue;
        }
        out.any_window = true;
        out.gammas.push_back(skewness(win, w->lo));
    }
    return out;
}

double aggregate_gamma(const std::vector<double>& gammas, double* spread) {
    double lo = 1e300, hi = -1e300;
    bool any = false;
    for (double g : gammas) {
        if (std::isnan(g)) continue;
        lo = std::min(lo, g);
        hi = std::max(hi, g);
        any = true;
    }
    if (!any) {
        if (spread) *spread = 0.0;
        return 0.0;
    }
    if (spread) *spread = (hi - lo) / 2.0;
    return (hi + lo) / 2.0;
}

} // namespace

SkewnessReport skewness_sweep(const std::vector<double>& e,
                              const std::vector<double>& sigma_e, double cutoff_min,
                              double cutoff_max, double cutoff_step, LatticeHalf half,
                              int bootstrap_n, uint64_t seed) {
    SkewnessReport report;
    for (double eps = cutoff_min; eps <= cutoff_max + 1e-12; eps += cutoff_step)
        report.cutoffs.push_back(eps);

    const int L = static_cast<int>(e.size());
    int peak = static_cast<int>(std::max_element(e.begin(), e.end()) - e.begin());
    auto core = sweep_once(e, sigma_e, report.cutoffs, half);
    report.gamma_eps = core.gammas;
    if (peak == L / 2 || !core.any_window) {
        report.zeroed = true;
        report.gamma = 0.0;
        report.error = 0.0;
        return report;
    }
    report.gamma = aggregate_gamma(core.gammas, &report.cutoff_spread);

    if (bootstrap_n > 1 && !sigma_e.empty()) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<double> boots;
        for (int b = 0; b < bootstrap_n; ++b) {
            std::vector<double> pert(e.size());
            for (size_t i = 0; i < e.size(); ++i) pert[i] = e[i] + sigma_e[i] * gauss(rng);
            auto c2 = sweep_once(pert, sigma_e, report.cutoffs, half);
            if (!c2.any_window) continue;
            boots.push_back(aggregate_gamma(c2.gammas, nullptr));
        }
        if (boots.size() > 2) {
            double m = 0.0;
            for (double v : boots) m += v;
            m /= boots.size();
            double var = 0.0;
            for (double v : boots) var += (v - m) * (v - m);
            report.sigma_bootstrap = std::sqrt(var / (boots.size() - 1));
        }
    }
    report.error = std::sqrt(report.cutoff_spread * report.cutoff_spread +
                             report.sigma_bootstrap * report.sigma_bootstrap);
    return report;
}

} // namespace ift
