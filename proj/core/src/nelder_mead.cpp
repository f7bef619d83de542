#include "iftsim/nelder_mead.hpp"

#include <algorithm>
#include <cmath>

namespace ift {

namespace {

struct Tracker {
    const std::function<double(const std::vector<double>&)>& f;
    const NelderMeadOptions& opts;
    int evals = 0;
    std::vector<double> best_x;
    double best_f = 1e300;

    double eval(std::vector<double> x) {
        for (double& v : x) v = std::clamp(v, opts.lower, opts.upper);
        double y = f(x);
        ++evals;
        if (y < best_f) {
            best_f = y;
            best_x = x;
        }
        return y;
    }
};

void one_run(Tracker& t, std::vector<double> x0, double step, bool& converged) {
    const int n = static_cast<int>(x0.size());
    std::vector<std::vector<double>> pts(n + 1, x0);
    std::vector<double> fv(n + 1);
    for (int i = 0; i < n; ++i) pts[i + 1][i] += step;
    for (int i = 0; i <= n; ++i) fv[i] = t.eval(pts[i]);

    auto order = [&] {
        std::vector<int> idx(n + 1);
        for (int i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
        std::vector<std::vector<double>> p2;
        std::vector<double> f2;
        for (int i : idx) {
            p2.push_back(pts[i]);
            f2.push_back(fv[i]);
        }
        pts = std::move(p2);
        fv = std::move(f2);
    };

    while (t.evals < t.opts.max_evals) {
        order();
        if (std::abs(fv[n] - fv[0]) <
            t.opts.f_tol * (std::abs(fv[0]) + std::abs(fv[n]) + 1e-12) + t.opts.f_tol) {
            converged = true;
            return;
        }
        std::vector<double> centroid(n, 0.0);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) centroid[j] += pts[i][j] / n;
        }
        auto mix = [&](double coeff) {
            std::vector<double> x(n);
            for (int j = 0; j < n; ++j)
                x[j] = centroid[j] + coeff * (pts[n][j] - centroid[j]);
            return x;
        };
        auto xr = mix(-1.0);
        double fr = t.eval(xr);
        if (fr < fv[0]) {
            auto xe = mix(-2.0);
            double fe = t.eval(xe);
            if (fe < fr) {
                pts[n] = xe;
                fv[n] = fe;
            } else {
                pts[n] = xr;
                fv[n] = fr;
            }
        } else if (fr < fv[n - 1]) {
            pts[n] = xr;
            fv[n] = fr;
        } else {
            auto xc = mix(fr < fv[n] ? -0.5 : 0.5);
            double fc = t.eval(xc);
            if (fc < std::min(fr, fv[n])) {
                pts[n] = xc;
                fv[n] = fc;
            } else {
                for (int i = 1; i <= n; ++i) {
                    for (int j = 0; j < n; ++j)
                        pts[i][j] = pts[0][j] + 0.5 * (pts[i][j] - pts[0][j]);
                    fv[i] = t.eval(pts[i]);
                }
            }
        }
    }
}

} // namespace

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, const NelderMeadOptions& opts) {
    NelderMeadResult result;
    if (x0.empty()) {
        result.x = {};
        result.f = f(x0);
        result.evals = 1;
        result.converged = true;
        return result;
    }
    Tracker t{f, opts, 0, x0, 1e300};
    bool converged = false;
    double step = opts.initial_step;
    one_run(t, x0, step, converged);
    for (int r = 0; r < opts.restarts && t.evals < opts.max_evals; ++r) {
        bool c2 = false;
        one_run(t, t.best_x, step * 0.3, c2);
        converged = converged && c2;
    }
    result.x = t.best_x;
    result.f = t.best_f;
    result.evals = t.evals;
    result.converged = converged;
    return result;
}

} // namespace ift
