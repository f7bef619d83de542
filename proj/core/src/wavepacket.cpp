#include "iftsim/wavepacket.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "iftsim/error.hpp"

namespace ift {

WCoefficients WCoefficients::conjugated() const {
    WCoefficients out = *this;
    for (double& p : out.phi) p = -p;
    return out;
}

CoefficientResult coefficients(const WavepacketSpec& spec) {
    const int L = spec.L;
    if (L < 2) throw InvalidArgument("coefficients: L must be >= 2");
    if (spec.k0 < 0.0) {
        // negative-momentum seeds are the phase conjugates of their positive
        // partners; evaluating them this way keeps opposite packets exact
        // mirrors of each other (the self-conjugate k = pi mode would
        // otherwise break the reflection by its envelope tail)
        WavepacketSpec flipped = spec;
        flipped.k0 = -spec.k0;
        CoefficientResult res = coefficients(flipped);
        res.coeffs = res.coeffs.conjugated();
        return res;
    }
    if (spec.d < 1 || spec.d > L) throw InvalidArgument("coefficients: d out of range");
    if (spec.sigma <= 0.0) throw InvalidArgument("coefficients: sigma must be positive");

    // full-lattice amplitudes from the momentum sum, k = 2 pi m / L in (-pi, pi]
    std::vector<cd> a(L, cd{0.0, 0.0});
    for (int m = 0; m < L; ++m) {
        double k = 2.0 * std::numbers::pi * m / L;
        if (k > std::numbers::pi + 1e-12) k -= 2.0 * std::numbers::pi;
        // periodic momentum distance: k = pi and k = -pi are the same mode
        double dk = std::remainder(spec.k0 - k, 2.0 * std::numbers::pi);
        double env = std::exp(-dk * dk / (4.0 * spec.sigma * spec.sigma));
        cd phase = std::exp(cd{0.0, -k * spec.x0}) * env;
        for (int n = 0; n < L; ++n) {
            a[n] += phase * std::exp(cd{0.0, k * n});
        }
    }
    double total = 0.0;
    for (const cd& v : a) total += std::norm(v);
    if (total < 1e-28) throw InvalidArgument("coefficients: degenerate spec (zero weight)");

    // truncation window: d contiguous sites centred on x0
    int start = static_cast<int>(std::lround(spec.x0 - (spec.d - 1) / 2.0));
    if (spec.boundary == Boundary::OBC) {
        if (start < 0 || start + spec.d > L)
            throw InvalidArgument("coefficients: truncation window outside the open chain");
    } else {
        start = ((start % L) + L) % L;
        if (spec.d > L) throw InvalidArgument("coefficients: window larger than lattice");
    }

    WCoefficients out;
    out.window_start = start;
    out.c.resize(spec.d);
    out.phi.resize(spec.d);
    double kept = 0.0;
    for (int i = 0; i < spec.d; ++i) {
        int n = (start + i) % L;
        kept += std::norm(a[n]);
    }
    if (kept < 1e-28) throw InvalidArgument("coefficients: empty truncation window");
    const double scale = 1.0 / std::sqrt(kept);
    for (int i = 0; i < spec.d; ++i) {
        int n = (start + i) % L;
        out.c[i] = std::abs(a[n]) * scale;
        out.phi[i] = out.c[i] > 1e-14 ? std::arg(a[n]) : 0.0;
    }
    return CoefficientResult{std::move(out), 1.0 - kept / total};
}

StateVector seed_state(const WCoefficients& coeffs, int L) {
    StateVector psi(L);
    for (int i = 0; i < coeffs.d(); ++i) {
        int n = (coeffs.window_start + i) % L;
        psi.amp[uint64_t{1} << n] =
            coeffs.c[i] * std::exp(cd{0.0, coeffs.phi[i]});
    }
    psi.normalize();
    return psi;
}

} // namespace ift
