#include "iftsim/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "iftsim/error.hpp"

namespace ift {

double free_dispersion(double g_x, double k) {
    return 2.0 * std::sqrt(1.0 + g_x * g_x - 2.0 * g_x * std::cos(k));
}

double continuum_dispersion(double m, double g_x, double k) {
    return std::sqrt(m * m + 4.0 * g_x * k * k);
}

namespace {

void fix_phase(StateVector& psi) {
    // rotate so the amplitude of |0...01> is real and positive
    cd a = psi.amp[1];
    if (std::abs(a) < 1e-12)
        throw NumericalError("phase convention: reference amplitude vanishes");
    cd phase = std::conj(a) / std::abs(a);
    for (cd& v : psi.amp) v *= phase;
}

} // namespace

SpectrumResult single_particle_spectrum(const IsingModel& model,
                                        const LanczosOptions& opts) {
    validate(model);
    if (model.boundary != Boundary::PBC)
        throw InvalidArgument("single_particle_spectrum requires periodic boundaries");
    const int L = model.L;
    auto orbits = build_orbits(L);
    auto terms = hamiltonian_terms(model);

    SpectrumResult out;
    out.model = model;
    out.particle1.resize(L);
    for (int m = 0; m < L; ++m) {
        auto basis = momentum_basis(orbits, m);
        auto Hk = block_matrix(orbits, basis, terms);
        LanczosOptions o = opts;
        o.n_eigs = (m == 0) ? 3 : 2;
        o.seed = opts.seed + m;
        auto eig = lowest_eigenpairs(Hk, o);
        if (m == 0) {
            out.vacuum_energy = eig.eigenvalues[0];
            out.vacuum_state = lift_to_full(basis, eig.eigenvectors[0]);
            out.m1 = eig.eigenvalues[1] - eig.eigenvalues[0];
            out.m2 = eig.eigenvalues[2] - eig.eigenvalues[0];
            SingleParticleState sp;
            sp.k_index = 0;
            sp.k = 0.0;
            sp.energy = out.m1;
            sp.state = lift_to_full(basis, eig.eigenvectors[1]);
            fix_phase(sp.state);
            out.particle1[0] = std::move(sp);
        } else {
            if (eig.eigenvalues.size() > 1 &&
                eig.eigenvalues[1] - eig.eigenvalues[0] < 1e-10) {
                throw NumericalError("degenerate lowest state in momentum block k_index=" +
                                     std::to_string(m));
            }
            SingleParticleState sp;
            sp.k_index = m;
            double k = basis.k();
            if (k > std::numbers::pi + 1e-12) k -= 2.0 * std::numbers::pi;
            sp.k = k;
            sp.energy = eig.eigenvalues[0] - out.vacuum_energy;
            sp.state = lift_to_full(basis, eig.eigenvectors[0]);
            fix_phase(sp.state);
            out.particle1[m] = std::move(sp);
        }
    }
    return out;
}

StateVector exact_wavepacket(const SpectrumResult& spectrum, const WavepacketSpec& spec) {
    const int L = spectrum.model.L;
    if (spec.L != L) throw InvalidArgument("exact_wavepacket: L mismatch");
    StateVector psi(L);
    for (int m = 0; m < L; ++m) {
        const auto& sp = spectrum.particle1[m];
        double dk = std::remainder(spec.k0 - sp.k, 2.0 * std::numbers::pi);
        double env = std::exp(-dk * dk / (4.0 * spec.sigma * spec.sigma));
        if (env < 1e-300) continue;
        cd w = std::exp(cd{0.0, -sp.k * spec.x0}) * env;
        for (uint64_t b = 0; b < psi.dim(); ++b) psi.amp[b] += w * sp.state.amp[b];
    }
    psi.normalize();
    return psi;
}

DispersionTable dispersion_and_velocity(const SpectrumResult& spectrum) {
    const int L = spectrum.model.L;
    DispersionTable t;
    std::vector<double> e(L);
    for (int m = 0; m < L; ++m) e[m] = spectrum.particle1[m].energy;
    for (int m = 0; m < L; ++m) {
        double k = spectrum.particle1[m].k;
        t.k_over_pi.push_back(k / std::numbers::pi);
        t.energy.push_back(e[m]);
        const double eps = 2.0 * std::numbers::pi / L;
        double ep = e[(m + 1) % L], em = e[(m - 1 + L) % L];
        t.velocity.push_back((ep - em) / (2.0 * eps));
    }
    return t;
}

namespace {

double bisect(const std::function<double(double)>& f, double a, double b) {
    double fa = f(a), fb = f(b);
    if (fa * fb > 0) throw NumericalError("kinematics: root not bracketed");
    for (int it = 0; it < 200; ++it) {
        double m = 0.5 * (a + b);
        double fm = f(m);
        if (fa * fm <= 0) {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    return 0.5 * (a + b);
}

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

} // namespace

Kinematics inelastic_kinematics(double m1, double m2, double g_x, double k0, double sigma) {
    Kinematics kin;
    kin.m1 = m1;
    kin.m2 = m2;
    kin.e_thr = m1 + m2;
    auto e1 = [&](double k) { return continuum_dispersion(m1, g_x, k); };
    auto e2 = [&](double k) { return continuum_dispersion(m2, g_x, k); };
    kin.k_thr = bisect([&](double k) { return e1(k) - kin.e_thr / 2.0; }, 0.0,
                       std::numbers::pi);
    const double e_in = 2.0 * e1(std::abs(k0));
    if (e_in > kin.e_thr) {
        kin.k_out = bisect([&](double k) { return e1(k) + e2(k) - e_in; }, 0.0,
                           std::abs(k0) + 1e-12);
        auto v = [&](double m, double k) {
            return 4.0 * g_x * k / continuum_dispersion(m, g_x, k);
        };
        kin.v1_out = v(m1, kin.k_out);
        kin.v2_out = v(m2, kin.k_out);
    }
    // probability that a packet momentum drawn from N(k0, sigma) clears the
    // threshold in magnitude; both packets must clear it
    double q = std_normal_cdf((std::abs(k0) - kin.k_thr) / sigma) +
               std_normal_cdf((-std::abs(k0) - kin.k_thr) / sigma);
    kin.p_access = q * q;
    // centre-of-mass energy criterion on a quadrature grid
    {
        const int n = 400;
        double p = 0.0, wsum = 0.0;
        std::vector<double> kk(n), ww(n);
        for (int i = 0; i < n; ++i) {
            double z = -5.0 + 10.0 * (i + 0.5) / n;
            kk[i] = k0 + sigma * z;
            ww[i] = std::exp(-0.5 * z * z);
        }
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                double et = e1(kk[i]) + e1(kk[j]); // E1 is even in k
                double w = ww[i] * ww[j];
                wsum += w;
                if (et > kin.e_thr) p += w;
            }
        }
        kin.p_access_com = p / wsum;
    }
    return kin;
}

ExponentialFit fit_exponential(const std::vector<double>& L, const std::vector<double>& m) {
    if (L.size() != m.size() || L.size() < 3)
        throw InvalidArgument("fit_exponential needs at least three points");
    // scan b, solve the linear part, keep the best residual
    ExponentialFit best;
    double best_res = 1e300;
    for (double b = 0.01; b < 3.0; b += 0.002) {
        // least squares for m = m_inf + a e^{-bL}
        double s1 = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t i = 0; i < L.size(); ++i) {
            double x = std::exp(-b * L[i]);
            s1 += 1;
            sx += x;
            sy += m[i];
            sxx += x * x;
            sxy += x * m[i];
        }
        double det = s1 * sxx - sx * sx;
        if (std::abs(det) < 1e-14) continue;
        double a = (s1 * sxy - sx * sy) / det;
        double minf = (sy - a * sx) / s1;
        double res = 0;
        for (size_t i = 0; i < L.size(); ++i) {
            double r = m[i] - (minf + a * std::exp(-b * L[i]));
            res += r * r;
        }
        if (res < best_res) {
            best_res = res;
            best = ExponentialFit{minf, a, b};
        }
    }
    return best;
}

} // namespace ift
