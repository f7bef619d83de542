#include "iftsim/state_vector.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "iftsim/error.hpp"

namespace ift {

StateVector::StateVector(int n) : n_qubits(n), amp(size_t{1} << n, cd{0.0, 0.0}) {
    if (n < 0 || n > 28) throw InvalidArgument("StateVector: unsupported qubit count");
}

StateVector StateVector::zero_state(int n) {
    StateVector s(n);
    s.amp[0] = 1.0;
    return s;
}

StateVector StateVector::basis_state(int n, uint64_t index) {
    StateVector s(n);
    if (index >= s.dim()) throw InvalidArgument("basis_state: index out of range");
    s.amp[index] = 1.0;
    return s;
}

double StateVector::norm() const {
    double s = 0.0;
    for (const cd& a : amp) s += std::norm(a);
    return std::sqrt(s);
}

void StateVector::normalize() {
    double n = norm();
    if (n == 0.0) throw NumericalError("cannot normalize the zero vector");
    for (cd& a : amp) a /= n;
}

cd overlap(const StateVector& a, const StateVector& b) {
    if (a.n_qubits != b.n_qubits) throw InvalidArgument("overlap: size mismatch");
    cd s{0.0, 0.0};
    for (size_t i = 0; i < a.amp.size(); ++i) s += std::conj(a.amp[i]) * b.amp[i];
    return s;
}

double fidelity(const StateVector& a, const StateVector& b) {
    return std::norm(overlap(a, b));
}

namespace {

struct StringMasks {
    uint64_t flip = 0;  // X and Y sites
    uint64_t phase = 0; // Y and Z sites contribute (-1)^bit
    int n_y = 0;
};

StringMasks masks_of(const PauliString& p, int n_qubits) {
    StringMasks m;
    for (const auto& [site, op] : p.factors) {
        if (site < 0 || site >= n_qubits)
            throw InvalidArgument("Pauli site out of range: " + std::to_string(site));
        uint64_t bit = uint64_t{1} << site;
        switch (op) {
            case Pauli::X: m.flip |= bit; break;
            case Pauli::Y: m.flip |= bit; m.phase |= bit; ++m.n_y; break;
            case Pauli::Z: m.phase |= bit; break;
        }
    }
    return m;
}

inline cd i_power(int n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

} // namespace

cd expval_complex(const StateVector& psi, const std::vector<PauliString>& observable) {
    cd total{0.0, 0.0};
    for (const auto& term : observable) {
        StringMasks m = masks_of(term, psi.n_qubits);
        cd pref = i_power(m.n_y) * term.coefficient;
        cd s{0.0, 0.0};
        const size_t dim = psi.dim();
        for (size_t b = 0; b < dim; ++b) {
            const cd& a = psi.amp[b];
            if (a == cd{0.0, 0.0}) continue;
            double sign = (std::popcount(b & m.phase) & 1) ? -1.0 : 1.0;
            s += std::conj(psi.amp[b ^ m.flip]) * (sign * a);
        }
        total += pref * s;
    }
    return total;
}

double expval(const StateVector& psi, const std::vector<PauliString>& observable) {
    return expval_complex(psi, observable).real();
}

void apply_pauli_exponential(StateVector& psi, const PauliString& p, double theta) {
    StringMasks m = masks_of(p, psi.n_qubits);
    if (std::abs(std::abs(p.coefficient) - 1.0) > 1e-12)
        throw InvalidArgument("apply_pauli_exponential expects a unit-coefficient string");
    if (p.coefficient < 0) theta = -theta;
    const cd c = std::cos(theta);
    const cd is = cd{0.0, 1.0} * std::sin(theta) * i_power(m.n_y);
    const size_t dim = psi.dim();
    if (m.flip == 0) {
        for (size_t b = 0; b < dim; ++b) {
            double sign = (std::popcount(b & m.phase) & 1) ? -1.0 : 1.0;
            psi.amp[b] *= c + is * sign;
        }
        return;
    }
    for (size_t b = 0; b < dim; ++b) {
        size_t b2 = b ^ m.flip;
        if (b2 < b) continue;
        double s1 = (std::popcount(b & m.phase) & 1) ? -1.0 : 1.0;
        double s2 = (std::popcount(b2 & m.phase) & 1) ? -1.0 : 1.0;
        cd a1 = psi.amp[b], a2 = psi.amp[b2];
        // exp(i t P)|b> = cos|b> + i sin * P|b>, P|b> = pref*s1 |b2>
        psi.amp[b] = c * a1 + is * s2 * a2;
        psi.amp[b2] = c * a2 + is * s1 * a1;
    }
}

StateVector translated(const StateVector& psi, int shift) {
    const int L = psi.n_qubits;
    StateVector out(L);
    const uint64_t mask = (uint64_t{1} << L) - 1;
    int s = ((shift % L) + L) % L;
    for (uint64_t b = 0; b < psi.dim(); ++b) {
        uint64_t b2 = ((b >> s) | (b << (L - s))) & mask; // rotate right by s
        if (s == 0) b2 = b;
        out.amp[b2] = psi.amp[b];
    }
    return out;
}

std::vector<double> momentum_block_weights(const StateVector& psi, int L) {
    if (psi.n_qubits != L) throw InvalidArgument("momentum_block_weights: L mismatch");
    // w_k = (1/L) sum_delta e^{-ik delta} <psi|T^delta|psi>
    std::vector<cd> corr(L);
    StateVector shifted = psi;
    for (int delta = 0; delta < L; ++delta) {
        corr[delta] = overlap(psi, shifted);
        if (delta + 1 < L) shifted = translated(shifted, 1);
    }
    std::vector<double> w(L);
    for (int m = 0; m < L; ++m) {
        double k = 2.0 * std::numbers::pi * m / L;
        cd s{0.0, 0.0};
        for (int d = 0; d < L; ++d) s += std::exp(cd{0.0, -k * d}) * corr[d];
        w[m] = s.real() / L;
    }
    return w;
}

} // namespace ift
