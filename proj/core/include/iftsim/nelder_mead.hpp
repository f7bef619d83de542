#pragma once

#include <functional>
#include <vector>

namespace ift {

struct NelderMeadOptions {
    double f_tol = 1e-9;
    int max_evals = 4000;
    int restarts = 1;
    double initial_step = 0.12;
    double lower = -1.5707963267948966; // angle bounds
    double upper = 1.5707963267948966;
};

struct NelderMeadResult {
    std::vector<double> x;
    double f = 0.0;
    int evals = 0;
    bool converged = false;
};

/// Derivative-free simplex descent with box projection and restart. Returns
/// the best point ever evaluated, so the result never exceeds f(x0).
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, const NelderMeadOptions& opts);

} // namespace ift
