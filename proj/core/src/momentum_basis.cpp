#include "iftsim/momentum_basis.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <numbers>

#include "iftsim/error.hpp"

namespace ift {

namespace {

inline uint32_t rotl_bits(uint32_t b, int L) {
    return ((b << 1) | (b >> (L - 1))) & ((uint32_t{1} << L) - 1);
}

} // namespace

TranslationOrbits build_orbits(int L) {
    if (L < 2 || L > 26) throw InvalidArgument("build_orbits: L out of supported range");
    TranslationOrbits o;
    o.L = L;
    const uint32_t dim = uint32_t{1} << L;
    o.orbit_of.assign(dim, -1);
    o.shift_of.assign(dim, 0);
    for (uint32_t b = 0; b < dim; ++b) {
        if (o.orbit_of[b] >= 0) continue;
        // b is the smallest unseen state of its orbit, hence the representative
        int id = static_cast<int>(o.reps.size());
        uint32_t x = b;
        int len = 0;
        do {
            o.orbit_of[x] = id;
            o.shift_of[x] = static_cast<int8_t>(len);
            x = rotl_bits(x, L);
            ++len;
        } while (x != b);
        o.reps.push_back(b);
        o.orbit_len.push_back(len);
    }
    return o;
}

double MomentumBasis::k() const { return 2.0 * std::numbers::pi * k_index / L; }

MomentumBasis momentum_basis(const TranslationOrbits& orbits, int k_index) {
    MomentumBasis basis;
    basis.L = orbits.L;
    basis.k_index = ((k_index % orbits.L) + orbits.L) % orbits.L;
    for (size_t i = 0; i < orbits.reps.size(); ++i) {
        // an orbit of length l supports momentum k iff k l = 0 (mod 2 pi)
        if ((static_cast<long>(basis.k_index) * orbits.orbit_len[i]) % orbits.L != 0)
            continue;
        basis.orbit_ids.push_back(static_cast<int>(i));
        basis.reps.push_back(orbits.reps[i]);
        basis.lens.push_back(orbits.orbit_len[i]);
    }
    return basis;
}

namespace {

struct TermMasks {
    uint32_t flip = 0;
    uint32_t phase = 0;
    int n_y = 0;
    double coeff = 1.0;
};

TermMasks term_masks(const PauliString& p) {
    TermMasks m;
    m.coeff = p.coefficient;
    for (const auto& [site, op] : p.factors) {
        uint32_t bit = uint32_t{1} << site;
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

Eigen::SparseMatrix<cd> block_matrix(const TranslationOrbits& orbits,
                                     const MomentumBasis& basis,
                                     const std::vector<PauliString>& terms) {
    const int L = basis.L;
    const double k = basis.k();
    const int dim = basis.dim();
    std::vector<int> col_of_orbit(orbits.reps.size(), -1);
    for (int j = 0; j < dim; ++j) col_of_orbit[basis.orbit_ids[j]] = j;

    std::vector<TermMasks> masks;
    masks.reserve(terms.size());
    for (const auto& t : terms) {
        if (t.max_site() >= L) throw InvalidArgument("block_matrix: term site out of range");
        masks.push_back(term_masks(t));
    }
    // precompute phases e^{i k t}
    std::vector<cd> ph(L);
    for (int t = 0; t < L; ++t) ph[t] = std::exp(cd{0.0, k * t});

    std::vector<Eigen::Triplet<cd>> trip;
    trip.reserve(static_cast<size_t>(dim) * (terms.size() + 1));
    std::vector<cd> dense(dim, cd{0.0, 0.0});
    for (int j = 0; j < dim; ++j) {
        const uint32_t rep = basis.reps[j];
        const int len = basis.lens[j];
        const double nrm_j = 1.0 / std::sqrt(static_cast<double>(len));
        std::vector<int> touched;
        uint32_t x = rep;
        for (int t = 0; t < len; ++t) {
            const cd amp = ph[t] * nrm_j;
            for (const TermMasks& m : masks) {
                double sign = (std::popcount(x & m.phase) & 1) ? -1.0 : 1.0;
                cd val = amp * (m.coeff * sign) * i_power(m.n_y);
                uint32_t y = x ^ m.flip;
                int row = col_of_orbit[orbits.orbit_of[y]];
                if (row < 0) continue; // lands outside this momentum block
                // <basis_i|y> = conj(e^{i k shift}) / sqrt(len_i)
                int shift = orbits.shift_of[y];
                const double nrm_i = 1.0 / std::sqrt(static_cast<double>(basis.lens[row]));
                if (dense[row] == cd{0.0, 0.0}) touched.push_back(row);
                dense[row] += val * std::conj(ph[shift]) * nrm_i;
            }
            x = rotl_bits(x, L);
        }
        for (int row : touched) {
            if (std::abs(dense[row]) > 1e-15) trip.emplace_back(row, j, dense[row]);
            dense[row] = cd{0.0, 0.0};
        }
    }
    Eigen::SparseMatrix<cd> Hk(dim, dim);
    Hk.setFromTriplets(trip.begin(), trip.end());
    return Hk;
}

StateVector lift_to_full(const MomentumBasis& basis, const Eigen::VectorXcd& v) {
    if (v.size() != basis.dim()) throw InvalidArgument("lift_to_full: size mismatch");
    StateVector psi(basis.L);
    const double k = basis.k();
    for (int j = 0; j < basis.dim(); ++j) {
        uint32_t x = basis.reps[j];
        const int len = basis.lens[j];
        const double nrm = 1.0 / std::sqrt(static_cast<double>(len));
        for (int t = 0; t < len; ++t) {
            psi.amp[x] += v[j] * std::exp(cd{0.0, k * t}) * nrm;
            x = rotl_bits(x, basis.L);
        }
    }
    return psi;
}

Eigen::VectorXcd project_to_block(const TranslationOrbits& orbits,
                                  const MomentumBasis& basis, const StateVector& psi) {
    if (psi.n_qubits != basis.L) throw InvalidArgument("project_to_block: L mismatch");
    std::vector<int> col_of_orbit(orbits.reps.size(), -1);
    for (int j = 0; j < basis.dim(); ++j) col_of_orbit[basis.orbit_ids[j]] = j;
    const double k = basis.k();
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(basis.dim());
    for (uint64_t b = 0; b < psi.dim(); ++b) {
        if (psi.amp[b] == cd{0.0, 0.0}) continue;
        int orb = orbits.orbit_of[b];
        int col = col_of_orbit[orb];
        if (col < 0) continue;
        int shift = orbits.shift_of[b];
        const double nrm = 1.0 / std::sqrt(static_cast<double>(basis.lens[col]));
        v[col] += std::conj(std::exp(cd{0.0, k * shift})) * nrm * psi.amp[b];
    }
    return v;
}

} // namespace ift
